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

#ifndef MIPTQE_PAULI_TABLE_HPP_
#define MIPTQE_PAULI_TABLE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace miptqe {

struct Clifford2;

// A list of signed Pauli strings over `num_qubits` qubits, bit-packed one
// row per generator: X bits in words [0, words), Z bits in [words, 2*words).
// Sign convention: a row (x, z, s) is (-1)^s * prod_j W(x_j, z_j) with
// W(1,1) = Y, so every stored row is Hermitian. Row products track the
// i-power phase mod 4; for commuting rows it lands back in {+1, -1}.
class PauliTable {
 public:
  PauliTable() = default;
  PauliTable(std::uint32_t num_qubits, std::uint32_t qubit_capacity);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::uint32_t qubit_capacity() const { return qubit_capacity_; }
  std::uint32_t rows() const { return rows_; }
  std::uint32_t words() const { return words_; }

  // Extends the active qubit range by `count` fresh qubits (all rows are
  // zero there by invariant) and returns the first new index. Grows the
  // packed storage when the capacity is exceeded.
  std::uint32_t add_qubits(std::uint32_t count);
  // Shrinks the active range; the released columns must already be clear.
  void release_qubits(std::uint32_t count);

  bool x(std::uint32_t r, std::uint32_t q) const { return bit(row_x(r), q); }
  bool z(std::uint32_t r, std::uint32_t q) const { return bit(row_z(r), q); }
  void set_x(std::uint32_t r, std::uint32_t q, bool v) { put(mut_row_x(r), q, v); }
  void set_z(std::uint32_t r, std::uint32_t q, bool v) { put(mut_row_z(r), q, v); }
  bool sign(std::uint32_t r) const { return signs_[r] != 0; }
  void set_sign(std::uint32_t r, bool v) { signs_[r] = v ? 1 : 0; }

  const std::uint64_t* row_x(std::uint32_t r) const { return bits_.data() + r * stride_; }
  const std::uint64_t* row_z(std::uint32_t r) const { return bits_.data() + r * stride_ + words_; }
  std::uint64_t* mut_row_x(std::uint32_t r) { return bits_.data() + r * stride_; }
  std::uint64_t* mut_row_z(std::uint32_t r) { return bits_.data() + r * stride_ + words_; }

  std::uint32_t append_zero_row();
  std::uint32_t append_z_row(std::uint32_t q, bool sign);
  std::uint32_t append_x_row(std::uint32_t q, bool sign);
  // Swap-with-last removal; row order is not meaningful.
  void remove_row(std::uint32_t r);
  void swap_rows(std::uint32_t a, std::uint32_t b);
  void clear_row(std::uint32_t r);

  bool row_is_identity(std::uint32_t r) const;
  // True if the row has no support on qubits [first, num_qubits).
  bool row_clear_from(std::uint32_t r, std::uint32_t first) const;
  bool row_has_support(std::uint32_t r, std::uint32_t q) const { return x(r, q) || z(r, q); }

  // dst := dst * src as Pauli operators. Returns true if the pair
  // anticommutes (phase sum odd); the sign bit is then the best-effort
  // +-1 part, which only matters for states that waive commutation.
  bool mul_row(std::uint32_t dst, std::uint32_t src);
  // Same, with src taken from another table of identical word layout.
  bool mul_row_from(std::uint32_t dst, const PauliTable& other, std::uint32_t src);

  bool rows_anticommute(std::uint32_t a, std::uint32_t b) const;

  // Conjugation by named Clifford gates, all rows at once.
  void apply_h(std::uint32_t q);
  void apply_p(std::uint32_t q);
  void apply_cnot(std::uint32_t c, std::uint32_t t);
  void apply_swap(std::uint32_t a, std::uint32_t b);
  void apply_clifford2(const Clifford2& gate, std::uint32_t a, std::uint32_t b);

  bool operator==(const PauliTable& other) const;

 private:
  static bool bit(const std::uint64_t* part, std::uint32_t q) {
    return (part[q >> 6] >> (q & 63)) & 1;
  }
  static void put(std::uint64_t* part, std::uint32_t q, bool v) {
    const std::uint64_t m = 1ull << (q & 63);
    part[q >> 6] = (part[q >> 6] & ~m) | (v ? m : 0);
  }

  std::uint32_t num_qubits_ = 0;
  std::uint32_t qubit_capacity_ = 0;
  std::uint32_t words_ = 0;   // words per X (or Z) part
  std::uint32_t stride_ = 0;  // 2 * words_
  std::uint32_t rows_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> signs_;
};

// Scratch GF(2) matrix for rank computations. Columns are interleaved per
// qubit: column 2q holds the X bit of qubit q, column 2q+1 the Z bit.
// Signs are irrelevant for every rank/entropy path and are not copied.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::uint32_t columns, std::uint32_t rows_hint);

  // Snapshot of the X/Z bits of `table`, restricted to `qubits` (in the
  // given order): qubit k of the snapshot is qubits[k] of the table.
  void load(const PauliTable& table, std::span<const std::uint32_t> qubits);
  // Snapshot over all active qubits of the table (identity order).
  void load(const PauliTable& table);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t columns() const { return columns_; }
  bool bit(std::uint32_t r, std::uint32_t c) const {
    return (data_[r * words_ + (c >> 6)] >> (c & 63)) & 1;
  }

  void xor_rows(std::uint32_t dst, std::uint32_t src);
  void swap_rows(std::uint32_t a, std::uint32_t b);

  // In-place Gaussian elimination scanning columns in ascending index
  // order. `cuts` is an ascending list of column counts; the result holds
  // the matrix rank restricted to the first cuts[i] columns. The final
  // entry of the result is the full rank if cuts ends with columns().
  std::vector<std::uint32_t> ranks_at_cuts(std::span<const std::uint32_t> cuts);

  std::uint32_t rank();

 private:
  std::uint32_t columns_ = 0;
  std::uint32_t words_ = 0;
  std::uint32_t rows_ = 0;
  std::vector<std::uint64_t> data_;
};

// Membership of Z_q in the GF(2) row space of the selected rows, with
// columns restricted to the first `num_cols_qubits` qubits (the selected
// rows must have no support beyond that range). Signs are ignored. On
// success returns the combining row indices (into `table`).
std::optional<std::vector<std::uint32_t>> solve_z_membership_rows(
    const PauliTable& table, std::span<const std::uint32_t> rows,
    std::uint32_t num_cols_qubits, std::uint32_t q);

}  // namespace miptqe

#endif  // MIPTQE_PAULI_TABLE_HPP_
