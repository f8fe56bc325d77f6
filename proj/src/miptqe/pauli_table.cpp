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

#include "miptqe/pauli_table.hpp"

#include <bit>
#include <cassert>
#include <cstring>
#include <stdexcept>

#include "miptqe/clifford2.hpp"

namespace miptqe {

namespace {
constexpr std::uint32_t words_for(std::uint32_t qubits) {
  return (qubits + 63) / 64;
}
}  // namespace

PauliTable::PauliTable(std::uint32_t num_qubits, std::uint32_t qubit_capacity)
    : num_qubits_(num_qubits),
      qubit_capacity_(qubit_capacity < num_qubits ? num_qubits : qubit_capacity),
      words_(words_for(qubit_capacity_ ? qubit_capacity_ : 1)),
      stride_(2 * words_) {}

std::uint32_t PauliTable::add_qubits(std::uint32_t count) {
  const std::uint32_t first = num_qubits_;
  if (num_qubits_ + count > qubit_capacity_) {
    std::uint32_t new_cap = qubit_capacity_ ? qubit_capacity_ : 1;
    while (new_cap < num_qubits_ + count) new_cap *= 2;
    const std::uint32_t new_words = words_for(new_cap);
    const std::uint32_t new_stride = 2 * new_words;
    std::vector<std::uint64_t> fresh(static_cast<std::size_t>(rows_) * new_stride, 0);
    for (std::uint32_t r = 0; r < rows_; ++r) {
      std::memcpy(fresh.data() + r * new_stride, row_x(r), words_ * 8);
      std::memcpy(fresh.data() + r * new_stride + new_words, row_z(r), words_ * 8);
    }
    bits_ = std::move(fresh);
    qubit_capacity_ = new_cap;
    words_ = new_words;
    stride_ = new_stride;
  }
  num_qubits_ += count;
  return first;
}

void PauliTable::release_qubits(std::uint32_t count) {
  assert(count <= num_qubits_);
#ifndef NDEBUG
  for (std::uint32_t r = 0; r < rows_; ++r) {
    for (std::uint32_t q = num_qubits_ - count; q < num_qubits_; ++q) {
      assert(!row_has_support(r, q));
    }
  }
#endif
  num_qubits_ -= count;
}

std::uint32_t PauliTable::append_zero_row() {
  const std::size_t need = static_cast<std::size_t>(rows_ + 1) * stride_;
  if (bits_.size() < need) bits_.resize(need, 0);
  std::memset(bits_.data() + static_cast<std::size_t>(rows_) * stride_, 0, stride_ * 8);
  signs_.push_back(0);
  return rows_++;
}

std::uint32_t PauliTable::append_z_row(std::uint32_t q, bool sign) {
  const std::uint32_t r = append_zero_row();
  set_z(r, q, true);
  set_sign(r, sign);
  return r;
}

std::uint32_t PauliTable::append_x_row(std::uint32_t q, bool sign) {
  const std::uint32_t r = append_zero_row();
  set_x(r, q, true);
  set_sign(r, sign);
  return r;
}

void PauliTable::remove_row(std::uint32_t r) {
  assert(r < rows_);
  const std::uint32_t last = rows_ - 1;
  if (r != last) {
    std::memcpy(mut_row_x(r), row_x(last), stride_ * 8);
    signs_[r] = signs_[last];
  }
  signs_.pop_back();
  rows_ = last;
}

void PauliTable::swap_rows(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  for (std::uint32_t w = 0; w < stride_; ++w) {
    std::swap(bits_[a * stride_ + w], bits_[b * stride_ + w]);
  }
  std::swap(signs_[a], signs_[b]);
}

void PauliTable::clear_row(std::uint32_t r) {
  std::memset(mut_row_x(r), 0, stride_ * 8);
  signs_[r] = 0;
}

bool PauliTable::row_is_identity(std::uint32_t r) const {
  const std::uint64_t* p = row_x(r);
  for (std::uint32_t w = 0; w < stride_; ++w) {
    if (p[w]) return false;
  }
  return true;
}

bool PauliTable::row_clear_from(std::uint32_t r, std::uint32_t first) const {
  for (std::uint32_t q = first; q < num_qubits_; ++q) {
    if (row_has_support(r, q)) return false;
  }
  return true;
}

bool PauliTable::mul_row(std::uint32_t dst, std::uint32_t src) {
  return mul_row_from(dst, *this, src);
}

bool PauliTable::mul_row_from(std::uint32_t dst, const PauliTable& other, std::uint32_t src) {
  assert(other.words_ == words_);
  std::uint64_t* dx = mut_row_x(dst);
  std::uint64_t* dz = dx + words_;
  const std::uint64_t* sx = other.row_x(src);
  const std::uint64_t* sz = sx + words_;
  int pos = 0, neg = 0;
  for (std::uint32_t w = 0; w < words_; ++w) {
    const std::uint64_t x1 = dx[w], z1 = dz[w], x2 = sx[w], z2 = sz[w];
    pos += std::popcount((x1 & ~z1 & x2 & z2) | (~x1 & z1 & x2 & ~z2) |
                         (x1 & z1 & ~x2 & z2));
    neg += std::popcount((x1 & ~z1 & ~x2 & z2) | (~x1 & z1 & x2 & z2) |
                         (x1 & z1 & x2 & ~z2));
    dx[w] = x1 ^ x2;
    dz[w] = z1 ^ z2;
  }
  const int phase =
      (((pos - neg) % 4) + 4 + 2 * (signs_[dst] + other.signs_[src])) & 3;
  signs_[dst] = static_cast<std::uint8_t>((phase >> 1) & 1);
  return (phase & 1) != 0;
}

bool PauliTable::rows_anticommute(std::uint32_t a, std::uint32_t b) const {
  const std::uint64_t* ax = row_x(a);
  const std::uint64_t* az = ax + words_;
  const std::uint64_t* bx = row_x(b);
  const std::uint64_t* bz = bx + words_;
  std::uint64_t acc = 0;
  for (std::uint32_t w = 0; w < words_; ++w) {
    acc ^= (ax[w] & bz[w]) ^ (az[w] & bx[w]);
  }
  return (std::popcount(acc) & 1) != 0;
}

void PauliTable::apply_h(std::uint32_t q) {
  const std::uint32_t w = q >> 6;
  const std::uint64_t m = 1ull << (q & 63);
  std::uint64_t* px = bits_.data() + w;
  std::uint64_t* pz = px + words_;
  for (std::uint32_t r = 0; r < rows_; ++r, px += stride_, pz += stride_) {
    const std::uint64_t xb = *px & m, zb = *pz & m;
    signs_[r] ^= static_cast<std::uint8_t>(xb != 0 && zb != 0);
    const std::uint64_t d = xb ^ zb;
    *px ^= d;
    *pz ^= d;
  }
}

void PauliTable::apply_p(std::uint32_t q) {
  const std::uint32_t w = q >> 6;
  const std::uint64_t m = 1ull << (q & 63);
  std::uint64_t* px = bits_.data() + w;
  std::uint64_t* pz = px + words_;
  for (std::uint32_t r = 0; r < rows_; ++r, px += stride_, pz += stride_) {
    const std::uint64_t xb = *px & m;
    signs_[r] ^= static_cast<std::uint8_t>(xb != 0 && (*pz & m) != 0);
    *pz ^= xb;
  }
}

void PauliTable::apply_cnot(std::uint32_t c, std::uint32_t t) {
  const std::uint32_t wc = c >> 6, wt = t >> 6;
  const std::uint64_t mc = 1ull << (c & 63), mt = 1ull << (t & 63);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t* base = bits_.data() + r * stride_;
    const bool xc = (base[wc] & mc) != 0;
    const bool zc = (base[words_ + wc] & mc) != 0;
    const bool xt = (base[wt] & mt) != 0;
    const bool zt = (base[words_ + wt] & mt) != 0;
    signs_[r] ^= static_cast<std::uint8_t>(xc && zt && (xt == zc));
    if (xc) base[wt] ^= mt;
    if (zt) base[words_ + wc] ^= mc;
  }
}

void PauliTable::apply_swap(std::uint32_t a, std::uint32_t b) {
  const std::uint32_t wa = a >> 6, wb = b >> 6;
  const std::uint64_t ma = 1ull << (a & 63), mb = 1ull << (b & 63);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t* base = bits_.data() + r * stride_;
    for (std::uint32_t part = 0; part < 2; ++part) {
      std::uint64_t* pa = base + part * words_ + wa;
      std::uint64_t* pb = base + part * words_ + wb;
      const bool va = (*pa & ma) != 0;
      const bool vb = (*pb & mb) != 0;
      if (va != vb) {
        *pa ^= ma;
        *pb ^= mb;
      }
    }
  }
}

void PauliTable::apply_clifford2(const Clifford2& gate, std::uint32_t a, std::uint32_t b) {
  const std::uint8_t* lut = clifford2_lut(gate);
  const std::uint32_t wa = a >> 6, wb = b >> 6;
  const std::uint64_t ma = 1ull << (a & 63), mb = 1ull << (b & 63);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t* base = bits_.data() + r * stride_;
    std::uint64_t* xa = base + wa;
    std::uint64_t* za = base + words_ + wa;
    std::uint64_t* xb = base + wb;
    std::uint64_t* zb = base + words_ + wb;
    const unsigned in = ((*xa & ma) != 0) | (((*za & ma) != 0) << 1) |
                        (((*xb & mb) != 0) << 2) | (((*zb & mb) != 0) << 3);
    if (in == 0) continue;
    const unsigned out = lut[in];
    *xa = (*xa & ~ma) | ((out & 1) ? ma : 0);
    *za = (*za & ~ma) | ((out & 2) ? ma : 0);
    *xb = (*xb & ~mb) | ((out & 4) ? mb : 0);
    *zb = (*zb & ~mb) | ((out & 8) ? mb : 0);
    signs_[r] ^= static_cast<std::uint8_t>((out >> 4) & 1);
  }
}

bool PauliTable::operator==(const PauliTable& other) const {
  if (num_qubits_ != other.num_qubits_ || rows_ != other.rows_) return false;
  const std::uint32_t active = words_for(num_qubits_);
  const std::uint64_t tail_mask =
      (num_qubits_ & 63) ? ((1ull << (num_qubits_ & 63)) - 1) : ~0ull;
  for (std::uint32_t r = 0; r < rows_; ++r) {
    if (signs_[r] != other.signs_[r]) return false;
    for (std::uint32_t part = 0; part < 2; ++part) {
      const std::uint64_t* p = part ? row_z(r) : row_x(r);
      const std::uint64_t* q = part ? other.row_z(r) : other.row_x(r);
      for (std::uint32_t w = 0; w < active; ++w) {
        const std::uint64_t m = (w + 1 == active) ? tail_mask : ~0ull;
        if ((p[w] & m) != (q[w] & m)) return false;
      }
    }
  }
  return true;
}

BitMatrix::BitMatrix(std::uint32_t columns, std::uint32_t rows_hint)
    : columns_(columns), words_(words_for(columns ? columns : 1)) {
  data_.reserve(static_cast<std::size_t>(rows_hint) * words_);
}

void BitMatrix::load(const PauliTable& table, std::span<const std::uint32_t> qubits) {
  columns_ = static_cast<std::uint32_t>(2 * qubits.size());
  words_ = words_for(columns_ ? columns_ : 1);
  rows_ = table.rows();
  data_.assign(static_cast<std::size_t>(rows_) * words_, 0);
  for (std::uint32_t r = 0; r < rows_; ++r) {
    std::uint64_t* dst = data_.data() + static_cast<std::size_t>(r) * words_;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
      const std::uint32_t q = qubits[k];
      if (table.x(r, q)) dst[(2 * k) >> 6] |= 1ull << ((2 * k) & 63);
      if (table.z(r, q)) dst[(2 * k + 1) >> 6] |= 1ull << ((2 * k + 1) & 63);
    }
  }
}

void BitMatrix::load(const PauliTable& table) {
  std::vector<std::uint32_t> qs(table.num_qubits());
  for (std::uint32_t q = 0; q < table.num_qubits(); ++q) qs[q] = q;
  load(table, qs);
}

void BitMatrix::xor_rows(std::uint32_t dst, std::uint32_t src) {
  std::uint64_t* d = data_.data() + static_cast<std::size_t>(dst) * words_;
  const std::uint64_t* s = data_.data() + static_cast<std::size_t>(src) * words_;
  for (std::uint32_t w = 0; w < words_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::uint32_t a, std::uint32_t b) {
  if (a == b) return;
  std::uint64_t* pa = data_.data() + static_cast<std::size_t>(a) * words_;
  std::uint64_t* pb = data_.data() + static_cast<std::size_t>(b) * words_;
  for (std::uint32_t w = 0; w < words_; ++w) std::swap(pa[w], pb[w]);
}

std::vector<std::uint32_t> BitMatrix::ranks_at_cuts(std::span<const std::uint32_t> cuts) {
  std::vector<std::uint32_t> out;
  out.reserve(cuts.size());
  std::uint32_t rank = 0;
  std::size_t ci = 0;
  for (std::uint32_t c = 0; c < columns_; ++c) {
    while (ci < cuts.size() && cuts[ci] == c) {
      out.push_back(rank);
      ++ci;
    }
    if (rank >= rows_) continue;
    std::uint32_t pivot = rank;
    while (pivot < rows_ && !bit(pivot, c)) ++pivot;
    if (pivot == rows_) continue;
    swap_rows(rank, pivot);
    for (std::uint32_t r = pivot + 1; r < rows_; ++r) {
      if (bit(r, c)) xor_rows(r, rank);
    }
    ++rank;
  }
  while (ci < cuts.size()) {
    out.push_back(rank);
    ++ci;
  }
  return out;
}

std::uint32_t BitMatrix::rank() {
  const std::uint32_t cut[1] = {columns_};
  return ranks_at_cuts(cut)[0];
}

std::optional<std::vector<std::uint32_t>> solve_z_membership_rows(
    const PauliTable& table, std::span<const std::uint32_t> rows,
    std::uint32_t num_cols_qubits, std::uint32_t q) {
  const std::uint32_t nrows = static_cast<std::uint32_t>(rows.size());
  const std::uint32_t data_cols = 2 * num_cols_qubits;
  const std::uint32_t total_cols = data_cols + nrows;
  const std::uint32_t words = (total_cols + 63) / 64;

  std::vector<std::uint64_t> m(static_cast<std::size_t>(nrows) * words, 0);
  const auto set = [&](std::uint32_t r, std::uint32_t c) {
    m[static_cast<std::size_t>(r) * words + (c >> 6)] |= 1ull << (c & 63);
  };
  const auto get = [&](std::uint32_t r, std::uint32_t c) -> bool {
    return (m[static_cast<std::size_t>(r) * words + (c >> 6)] >> (c & 63)) & 1;
  };
  const auto xor_rows = [&](std::uint32_t dst, std::uint32_t src) {
    for (std::uint32_t w = 0; w < words; ++w) {
      m[static_cast<std::size_t>(dst) * words + w] ^=
          m[static_cast<std::size_t>(src) * words + w];
    }
  };
  for (std::uint32_t r = 0; r < nrows; ++r) {
    const std::uint32_t src = rows[r];
    for (std::uint32_t qq = 0; qq < num_cols_qubits; ++qq) {
      if (table.x(src, qq)) set(r, 2 * qq);
      if (table.z(src, qq)) set(r, 2 * qq + 1);
    }
    set(r, data_cols + r);
  }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> pivots;
  std::uint32_t rank = 0;
  for (std::uint32_t c = 0; c < data_cols && rank < nrows; ++c) {
    std::uint32_t p = rank;
    while (p < nrows && !get(p, c)) ++p;
    if (p == nrows) continue;
    if (p != rank) {
      for (std::uint32_t w = 0; w < words; ++w) {
        std::swap(m[static_cast<std::size_t>(p) * words + w],
                  m[static_cast<std::size_t>(rank) * words + w]);
      }
    }
    for (std::uint32_t r = rank + 1; r < nrows; ++r) {
      if (get(r, c)) xor_rows(r, rank);
    }
    pivots.emplace_back(c, rank);
    ++rank;
  }

  std::vector<std::uint64_t> target(words, 0);
  target[(2 * q + 1) >> 6] |= 1ull << ((2 * q + 1) & 63);
  for (const auto& [col, row] : pivots) {
    if ((target[col >> 6] >> (col & 63)) & 1) {
      for (std::uint32_t w = 0; w < words; ++w) {
        target[w] ^= m[static_cast<std::size_t>(row) * words + w];
      }
    }
  }
  for (std::uint32_t c = 0; c < data_cols; ++c) {
    if ((target[c >> 6] >> (c & 63)) & 1) return std::nullopt;
  }
  std::vector<std::uint32_t> combo;
  for (std::uint32_t r = 0; r < nrows; ++r) {
    const std::uint32_t c = data_cols + r;
    if ((target[c >> 6] >> (c & 63)) & 1) combo.push_back(rows[r]);
  }
  return combo;
}

}  // namespace miptqe
