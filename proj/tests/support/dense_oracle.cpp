// Copyright 2026 The miptqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "support/dense_oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace miptqe::testing {

namespace {

using Cx = std::complex<double>;
constexpr Cx kI{0.0, 1.0};

Mat pauli_1q(bool x, bool z) {
  Mat m(2, 2);
  if (x && z) {
    m << 0, -kI, kI, 0;  // Y
  } else if (x) {
    m << 0, 1, 1, 0;  // X
  } else if (z) {
    m << 1, 0, 0, -1;  // Z
  } else {
    m.setIdentity();
  }
  return m;
}

Mat op_on_qubit(std::uint32_t n, std::uint32_t q, const Mat& u) {
  const std::size_t dim = 1ull << n;
  Mat out = Mat::Zero(dim, dim);
  const std::size_t mask = 1ull << q;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t bi = (i & mask) ? 1 : 0;
    for (std::size_t bo = 0; bo < 2; ++bo) {
      const Cx v = u(bo, bi);
      if (v == Cx{}) continue;
      const std::size_t o = (i & ~mask) | (bo ? mask : 0);
      out(o, i) += v;
    }
  }
  return out;
}

Mat op_on_pair(std::uint32_t n, std::uint32_t a, std::uint32_t b, const Mat& u) {
  // Gate basis index = bit_a + 2 * bit_b.
  const std::size_t dim = 1ull << n;
  Mat out = Mat::Zero(dim, dim);
  const std::size_t ma = 1ull << a, mb = 1ull << b;
  for (std::size_t i = 0; i < dim; ++i) {
    const std::size_t gi = ((i & ma) ? 1 : 0) | ((i & mb) ? 2 : 0);
    for (std::size_t go = 0; go < 4; ++go) {
      const Cx v = u(go, gi);
      if (v == Cx{}) continue;
      std::size_t o = i & ~(ma | mb);
      if (go & 1) o |= ma;
      if (go & 2) o |= mb;
      out(o, i) += v;
    }
  }
  return out;
}

Mat elementary_unitary(Clifford2Op op) {
  Mat h(2, 2), p(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  p << 1, 0, 0, kI;
  Mat u = Mat::Identity(4, 4);
  const auto embed1 = [&](const Mat& g, int qubit) {
    Mat out = Mat::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int o = 0; o < 4; ++o) {
        const int bi = qubit == 0 ? (i & 1) : (i >> 1);
        const int bo = qubit == 0 ? (o & 1) : (o >> 1);
        const int rest_i = qubit == 0 ? (i >> 1) : (i & 1);
        const int rest_o = qubit == 0 ? (o >> 1) : (o & 1);
        if (rest_i == rest_o) out(o, i) = g(bo, bi);
      }
    }
    return out;
  };
  switch (op) {
    case Clifford2Op::h0: return embed1(h, 0);
    case Clifford2Op::h1: return embed1(h, 1);
    case Clifford2Op::p0: return embed1(p, 0);
    case Clifford2Op::p1: return embed1(p, 1);
    case Clifford2Op::cx01:
      u.setZero();
      u(0, 0) = u(2, 2) = 1;  // control = qubit 0 (low bit)
      u(3, 1) = u(1, 3) = 1;
      return u;
    case Clifford2Op::cx10:
      u.setZero();
      u(0, 0) = u(1, 1) = 1;  // control = qubit 1
      u(3, 2) = u(2, 3) = 1;
      return u;
    case Clifford2Op::swap01:
      u.setZero();
      u(0, 0) = u(3, 3) = 1;
      u(1, 2) = u(2, 1) = 1;
      return u;
  }
  throw std::logic_error("bad opcode");
}

}  // namespace

DenseSim::DenseSim(std::uint32_t n) : n_(n), amp_(Vec::Zero(1ull << n)) {
  amp_[0] = 1.0;
}

std::uint32_t DenseSim::add_qubit_zero() {
  Vec next = Vec::Zero(amp_.size() * 2);
  next.head(amp_.size()) = amp_;
  amp_ = std::move(next);
  return n_++;
}

std::uint32_t DenseSim::add_bell_pair() {
  const std::uint32_t first = add_qubit_zero();
  add_qubit_zero();
  apply_h(first);
  apply_cnot(first, first + 1);
  return first;
}

void DenseSim::apply_h(std::uint32_t q) {
  const std::size_t m = 1ull << q;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if (i & m) continue;
    const Cx a0 = amp_[i], a1 = amp_[i | m];
    amp_[i] = s * (a0 + a1);
    amp_[i | m] = s * (a0 - a1);
  }
}

void DenseSim::apply_p(std::uint32_t q) {
  const std::size_t m = 1ull << q;
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if (i & m) amp_[i] *= kI;
  }
}

void DenseSim::apply_cnot(std::uint32_t c, std::uint32_t t) {
  const std::size_t mc = 1ull << c, mt = 1ull << t;
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if ((i & mc) && !(i & mt)) std::swap(amp_[i], amp_[i | mt]);
  }
}

void DenseSim::apply_swap(std::uint32_t a, std::uint32_t b) {
  const std::size_t ma = 1ull << a, mb = 1ull << b;
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if ((i & ma) && !(i & mb)) std::swap(amp_[i], amp_[(i & ~ma) | mb]);
  }
}

void DenseSim::apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b) {
  const Mat u = clifford2_unitary(gate);
  const std::size_t ma = 1ull << a, mb = 1ull << b;
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if ((i & ma) || (i & mb)) continue;
    Eigen::Vector4cd v{amp_[i], amp_[i | ma], amp_[i | mb], amp_[i | ma | mb]};
    v = u * v;
    amp_[i] = v[0];
    amp_[i | ma] = v[1];
    amp_[i | mb] = v[2];
    amp_[i | ma | mb] = v[3];
  }
}

double DenseSim::prob_z(std::uint32_t q, bool outcome) const {
  const std::size_t m = 1ull << q;
  double p = 0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if (((i & m) != 0) == outcome) p += std::norm(amp_[i]);
  }
  return p;
}

void DenseSim::project_z(std::uint32_t q, bool outcome) {
  const double p = prob_z(q, outcome);
  if (p < 1e-12) throw std::logic_error("projection onto a zero-probability branch");
  const std::size_t m = 1ull << q;
  const double scale = 1.0 / std::sqrt(p);
  for (std::size_t i = 0; i < static_cast<std::size_t>(amp_.size()); ++i) {
    if (((i & m) != 0) == outcome) {
      amp_[i] *= scale;
    } else {
      amp_[i] = 0;
    }
  }
}

Mat DenseSim::reduced_density(const QubitRegion& keep) const {
  const auto& ks = keep.qubits();
  const std::uint32_t k = static_cast<std::uint32_t>(ks.size());
  std::vector<std::uint32_t> env;
  for (std::uint32_t q = 0; q < n_; ++q) {
    if (!keep.contains(q)) env.push_back(q);
  }
  const std::size_t dim_k = 1ull << k, dim_e = 1ull << env.size();
  const auto scatter = [](const std::vector<std::uint32_t>& bits, std::size_t v) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (v >> j & 1) out |= 1ull << bits[j];
    }
    return out;
  };
  Mat rho = Mat::Zero(dim_k, dim_e == 0 ? dim_k : dim_k);
  rho.setZero();
  Vec col(dim_k);
  for (std::size_t e = 0; e < dim_e; ++e) {
    const std::size_t base = scatter(env, e);
    for (std::size_t i = 0; i < dim_k; ++i) {
      col[i] = amp_[base | scatter(ks, i)];
    }
    rho += col * col.adjoint();
  }
  return rho;
}

double DenseSim::entropy_bits(const QubitRegion& region) const {
  const QubitRegion* side = &region;
  QubitRegion other = region.complement(n_);
  if (other.size() < region.size()) side = &other;
  return von_neumann_bits(reduced_density(*side));
}

Mat clifford2_unitary(Clifford2 gate) {
  Mat u = Mat::Identity(4, 4);
  for (const auto op : clifford2_gate_word(gate)) {
    u = elementary_unitary(op) * u;
  }
  return u;
}

Mat pauli_row_matrix(const PauliTable& table, std::uint32_t row) {
  const std::uint32_t n = table.num_qubits();
  Mat out = Mat::Identity(1, 1);
  // Qubit q occupies bit q of the basis index, so higher qubits go on
  // the outer (high-bit) factor of the Kronecker product.
  for (std::uint32_t q = 0; q < n; ++q) {
    const Mat p = pauli_1q(table.x(row, q), table.z(row, q));
    Mat next(out.rows() * 2, out.cols() * 2);
    next.topLeftCorner(out.rows(), out.cols()) = p(0, 0) * out;
    next.topRightCorner(out.rows(), out.cols()) = p(0, 1) * out;
    next.bottomLeftCorner(out.rows(), out.cols()) = p(1, 0) * out;
    next.bottomRightCorner(out.rows(), out.cols()) = p(1, 1) * out;
    out = std::move(next);
  }
  if (table.sign(row)) out = -out;
  return out;
}

Mat stabilizer_to_density(const StabilizerState& state) {
  const std::uint32_t n = state.num_qubits();
  const std::size_t dim = 1ull << n;
  Mat rho = Mat::Identity(dim, dim);
  for (std::uint32_t r = 0; r < state.num_generators(); ++r) {
    rho = (rho + pauli_row_matrix(state.table(), r) * rho) / 2.0;
  }
  return rho / rho.trace();
}

Mat channel_direct(const Mat& rho, std::uint32_t n, std::uint32_t q, ChannelTag tag) {
  const Mat x = op_on_qubit(n, q, pauli_1q(true, false));
  const Mat y = op_on_qubit(n, q, pauli_1q(true, true));
  const Mat z = op_on_qubit(n, q, pauli_1q(false, true));
  switch (tag) {
    case ChannelTag::dephasing:
      return (rho + z * rho * z) / 2.0;
    case ChannelTag::resetting: {
      Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
      k0(0, 0) = 1;
      k1(0, 1) = 1;
      const Mat a = op_on_qubit(n, q, k0), b = op_on_qubit(n, q, k1);
      return a * rho * a.adjoint() + b * rho * b.adjoint();
    }
    case ChannelTag::depolarizing:
      return (rho + x * rho * x + y * rho * y + z * rho * z) / 4.0;
  }
  throw std::logic_error("bad tag");
}

Mat channel_stinespring_dense(const Mat& rho, std::uint32_t n, std::uint32_t q,
                              ChannelTag tag) {
  const std::uint32_t fresh = channel_fresh_count(tag);
  const std::uint32_t m = n + fresh;
  const std::size_t dim_f = 1ull << fresh;

  // Fresh register state: |0> or the Bell pair.
  Vec env = Vec::Zero(dim_f);
  if (tag == ChannelTag::depolarizing) {
    env[0] = env[3] = 1.0 / std::sqrt(2.0);
  } else {
    env[0] = 1.0;
  }
  const Mat env_rho = env * env.adjoint();

  // rho (low qubits) tensor env (high qubits).
  const std::size_t dim_n = 1ull << n, dim_m = 1ull << m;
  Mat big = Mat::Zero(dim_m, dim_m);
  for (std::size_t ei = 0; ei < dim_f; ++ei) {
    for (std::size_t ej = 0; ej < dim_f; ++ej) {
      big.block(ei * dim_n, ej * dim_n, dim_n, dim_n) = env_rho(ei, ej) * rho;
    }
  }

  Mat u;
  switch (tag) {
    case ChannelTag::dephasing: {
      Mat cx = Mat::Zero(4, 4);
      cx(0, 0) = cx(2, 2) = 1;
      cx(3, 1) = cx(1, 3) = 1;  // control = gate qubit 0
      u = op_on_pair(m, q, n, cx);
      break;
    }
    case ChannelTag::resetting:
    case ChannelTag::depolarizing: {
      Mat sw = Mat::Zero(4, 4);
      sw(0, 0) = sw(3, 3) = 1;
      sw(1, 2) = sw(2, 1) = 1;
      u = op_on_pair(m, q, n, sw);
      break;
    }
  }
  big = u * big * u.adjoint();
  return partial_trace(big, m, QubitRegion::range(0, n));
}

Mat partial_trace(const Mat& rho, std::uint32_t n, const QubitRegion& keep) {
  const auto& ks = keep.qubits();
  std::vector<std::uint32_t> env;
  for (std::uint32_t q = 0; q < n; ++q) {
    if (!keep.contains(q)) env.push_back(q);
  }
  const std::size_t dim_k = 1ull << ks.size(), dim_e = 1ull << env.size();
  const auto scatter = [](const std::vector<std::uint32_t>& bits, std::size_t v) {
    std::size_t out = 0;
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (v >> j & 1) out |= 1ull << bits[j];
    }
    return out;
  };
  Mat out = Mat::Zero(dim_k, dim_k);
  for (std::size_t i = 0; i < dim_k; ++i) {
    for (std::size_t j = 0; j < dim_k; ++j) {
      Cx sum = 0;
      for (std::size_t e = 0; e < dim_e; ++e) {
        const std::size_t base = scatter(env, e);
        sum += rho(base | scatter(ks, i), base | scatter(ks, j));
      }
      out(i, j) = sum;
    }
  }
  return out;
}

double von_neumann_bits(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> solver(rho);
  double s = 0;
  for (const double lambda : solver.eigenvalues()) {
    if (lambda > 1e-12) s -= lambda * std::log2(lambda);
  }
  return s;
}

}  // namespace miptqe::testing
