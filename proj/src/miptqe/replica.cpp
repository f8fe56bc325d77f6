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

#include "miptqe/replica.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace miptqe {

namespace {

std::int64_t catalan(int n) {
  // n <= 7 in any reachable use (cycle length <= Q <= 8).
  std::int64_t c = 1;
  for (int i = 0; i < n; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

std::int64_t ipow_checked(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > (INT64_MAX / base)) throw std::overflow_error("power too large");
    out *= base;
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<std::uint8_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) throw std::invalid_argument("not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int q) {
  std::vector<std::uint8_t> img(q);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int q, int a, int b) {
  auto p = identity(q);
  std::swap(p.image_[a], p.image_[b]);
  return p;
}

Permutation Permutation::block_cyclic(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("bad block shape");
  const int q = n * k + 1;
  std::vector<std::uint8_t> img(q);
  for (int b = 0; b < k; ++b) {
    for (int j = 0; j < n; ++j) {
      img[b * n + j] = static_cast<std::uint8_t>(b * n + (j + 1) % n);
    }
  }
  img[q - 1] = static_cast<std::uint8_t>(q - 1);
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw std::invalid_argument("size mismatch");
  std::vector<std::uint8_t> img(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) img[i] = image_[other.image_[i]];
  return Permutation(std::move(img));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> img(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) img[image_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(img));
}

int Permutation::cycle_count() const {
  return static_cast<int>(cycle_lengths().size());
}

std::vector<int> Permutation::cycle_lengths() const {
  std::vector<bool> seen(image_.size(), false);
  std::vector<int> lengths;
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    std::size_t j = i;
    while (!seen[j]) {
      seen[j] = true;
      j = image_[j];
      ++len;
    }
    lengths.push_back(len);
  }
  return lengths;
}

bool Permutation::commutes_with(const Permutation& other) const {
  return compose(other) == other.compose(*this);
}

std::string Permutation::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(static_cast<int>(image_[i]));
  }
  s += ']';
  return s;
}

std::vector<Permutation> all_permutations(int q) {
  std::vector<std::uint8_t> img(q);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::int64_t moebius(const Permutation& g) {
  std::int64_t m = 1;
  for (int len : g.cycle_lengths()) {
    const std::int64_t c = catalan(len - 1);
    m *= (len % 2 == 0) ? -c : c;
  }
  return m;
}

std::uint64_t replica_inner(const Permutation& sigma, const Permutation& tau, int d) {
  const Permutation g = sigma.compose(tau.inverse());
  return static_cast<std::uint64_t>(ipow_checked(d, g.cycle_count()));
}

Rational weingarten_leading(const Permutation& g, int d, int q) {
  if (g.size() != q) throw std::invalid_argument("size mismatch");
  const int exponent = 4 * q - 2 * g.cycle_count();
  return Rational{moebius(g), ipow_checked(d, exponent)};
}

ReplicaParams ReplicaParams::block(int n, int k, int d) {
  ReplicaParams params;
  params.cyclic = Permutation::block_cyclic(n, k);
  params.q = params.cyclic.size();
  params.d = d;
  return params;
}

ReplicaParams ReplicaParams::with_cyclic(Permutation c, int d) {
  ReplicaParams params;
  params.q = c.size();
  params.cyclic = std::move(c);
  params.d = d;
  return params;
}

double bond_weight_fields(const Permutation& sigma, const Permutation& tau,
                          const ReplicaParams& params, double p, double q_n,
                          double q_e, BondKind kind) {
  if (sigma.size() != params.q || tau.size() != params.q) {
    throw std::invalid_argument("replica count mismatch");
  }
  const double d = params.d;
  const Permutation ident = Permutation::identity(params.q);
  const auto st = static_cast<double>(replica_inner(sigma, tau, params.d));
  const auto s_c = static_cast<double>(replica_inner(sigma, params.cyclic, params.d));
  const auto s_i = static_cast<double>(replica_inner(sigma, ident, params.d));
  const double q_tot = q_n + q_e;
  switch (kind) {
    case BondKind::reset:
      return (1 - p) * (1 - q_tot) * st + (1 - p) * (q_e * s_c + q_n * s_i) + p * d;
    case BondKind::depolarizing: {
      const auto c_t = static_cast<double>(replica_inner(params.cyclic, tau, params.d));
      const auto i_t = static_cast<double>(replica_inner(ident, tau, params.d));
      return (1 - p) * (1 - q_tot) * st +
             (1 - p) * (q_e * s_c * c_t + q_n * s_i * i_t) +
             d * p * (q_n * s_i + q_e * s_c) + p * (1 - q_tot) * d;
    }
    case BondKind::dephasing_asymptotic: {
      const double delta = (sigma == tau) ? 1.0 : 0.0;
      return (1 - p) * (1 - q_tot) * st + (1 - p) * (q_e * s_c + q_n * s_i) * delta + p * d;
    }
  }
  return 0.0;
}

double bond_weight(const Permutation& sigma, const Permutation& tau,
                   const ReplicaParams& params, double p, double q, BondKind kind) {
  return bond_weight_fields(sigma, tau, params, p, q / 2, q / 2, kind);
}

std::uint64_t dephasing_exact_inner(const Permutation& sigma, const Permutation& tau,
                                    const ReplicaParams& params, DeltaInner which) {
  const int q = params.q;
  if (sigma.size() != q || tau.size() != q) throw std::invalid_argument("size mismatch");
  double states = std::pow(static_cast<double>(params.d), q);
  if (states > static_cast<double>(1 << 20)) {
    throw std::invalid_argument("enumeration too large; reduce Q or d");
  }
  Permutation lhs = sigma;
  Permutation rhs = tau;
  if (which == DeltaInner::q_op) {
    const Permutation cinv = params.cyclic.inverse();
    lhs = sigma.compose(cinv);
    rhs = tau.compose(cinv);
  }
  const std::uint64_t total = static_cast<std::uint64_t>(ipow_checked(params.d, q));
  std::uint64_t count = 0;
  std::vector<int> idx(q, 0);
  for (std::uint64_t it = 0; it < total; ++it) {
    std::uint64_t rem = it;
    for (int l = 0; l < q; ++l) {
      idx[l] = static_cast<int>(rem % params.d);
      rem /= params.d;
    }
    bool ok = true;
    for (int l = 0; l < q && ok; ++l) {
      ok = idx[l] == idx[lhs(l)] && idx[l] == idx[rhs(l)];
    }
    if (ok) ++count;
  }
  return count;
}

bool SymmetryReport::family_passes(const std::string& family) const {
  bool found = false;
  for (const auto& e : entries) {
    if (e.family != family) continue;
    found = true;
    if (!e.pass) return false;
  }
  return found;
}

bool SymmetryReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.pass) return false;
  }
  return true;
}

std::vector<Permutation> centralizer(const Permutation& c) {
  std::vector<Permutation> out;
  for (const auto& g : all_permutations(c.size())) {
    if (g.commutes_with(c)) out.push_back(g);
  }
  return out;
}

SymmetryReport symmetry_check(const ReplicaParams& params, BondKind kind, double p,
                              double q_n, double q_e, double tol) {
  if (params.q > 5) throw std::invalid_argument("exhaustive check limited to Q <= 5");
  SymmetryReport report;
  report.q = params.q;
  report.kind = kind;
  report.p = p;
  report.q_n = q_n;
  report.q_e = q_e;

  const auto perms = all_permutations(params.q);
  const auto weight = [&](const Permutation& s, const Permutation& t) {
    return bond_weight_fields(s, t, params, p, q_n, q_e, kind);
  };

  for (const auto& g : centralizer(params.cyclic)) {
    const Permutation ginv = g.inverse();
    double violation = 0.0;
    for (const auto& s : perms) {
      for (const auto& t : perms) {
        const double w1 = weight(s, t);
        const double w2 = weight(g.compose(s).compose(ginv), g.compose(t).compose(ginv));
        violation = std::max(violation, std::abs(w1 - w2));
      }
    }
    report.entries.push_back({"centralizer", g.str(), violation, violation <= tol});
  }

  {
    double violation = 0.0;
    for (const auto& s : perms) {
      for (const auto& t : perms) {
        violation = std::max(violation, std::abs(weight(s, t) - weight(s.inverse(), t.inverse())));
      }
    }
    report.entries.push_back({"inversion", "", violation, violation <= tol});
  }

  {
    double violation = 0.0;
    for (const auto& s : perms) {
      for (const auto& t : perms) {
        const double w2 = weight(s.inverse().compose(params.cyclic),
                                 t.inverse().compose(params.cyclic));
        violation = std::max(violation, std::abs(weight(s, t) - w2));
      }
    }
    report.entries.push_back({"field_swap", "", violation, violation <= tol});
  }
  return report;
}

}  // namespace miptqe
