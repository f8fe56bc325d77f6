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

#ifndef MIPTQE_RREF_HPP_
#define MIPTQE_RREF_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "miptqe/pauli_table.hpp"

namespace miptqe {

// Reduced row echelon form over GF(2), scanning the X then Z column of
// each prioritized qubit first and the remaining qubits in ascending
// order afterwards. Row operations are Pauli products (signs tracked).
// All-zero rows that fall out are removed; their count is returned.
inline int rref_in_place(PauliTable& t, std::span<const std::uint32_t> priority_qubits) {
  const std::uint32_t n = t.num_qubits();
  std::vector<std::uint8_t> prioritized(n, 0);
  std::vector<std::uint32_t> qubit_order;
  qubit_order.reserve(n);
  for (auto q : priority_qubits) {
    if (q < n && !prioritized[q]) {
      prioritized[q] = 1;
      qubit_order.push_back(q);
    }
  }
  for (std::uint32_t q = 0; q < n; ++q) {
    if (!prioritized[q]) qubit_order.push_back(q);
  }

  std::uint32_t rank = 0;
  for (auto q : qubit_order) {
    for (int part = 0; part < 2; ++part) {
      if (rank >= t.rows()) break;
      std::uint32_t pivot = rank;
      const auto has_bit = [&](std::uint32_t r) { return part == 0 ? t.x(r, q) : t.z(r, q); };
      while (pivot < t.rows() && !has_bit(pivot)) ++pivot;
      if (pivot == t.rows()) continue;
      t.swap_rows(rank, pivot);
      for (std::uint32_t r = 0; r < t.rows(); ++r) {
        if (r != rank && has_bit(r)) t.mul_row(r, rank);
      }
      ++rank;
    }
  }
  int removed = 0;
  while (t.rows() > rank) {
    t.remove_row(t.rows() - 1);
    ++removed;
  }
  return removed;
}

// Reduced row echelon form restricted to the listed qubits' columns.
// Pivot rows end up in positions [0, rank); no rows are removed.
inline int rref_columns(PauliTable& t, std::span<const std::uint32_t> qubits) {
  std::uint32_t rank = 0;
  for (auto q : qubits) {
    for (int part = 0; part < 2; ++part) {
      if (rank >= t.rows()) return static_cast<int>(rank);
      const auto has_bit = [&](std::uint32_t r) { return part == 0 ? t.x(r, q) : t.z(r, q); };
      std::uint32_t pivot = rank;
      while (pivot < t.rows() && !has_bit(pivot)) ++pivot;
      if (pivot == t.rows()) continue;
      t.swap_rows(rank, pivot);
      for (std::uint32_t r = 0; r < t.rows(); ++r) {
        if (r != rank && has_bit(r)) t.mul_row(r, rank);
      }
      ++rank;
    }
  }
  return static_cast<int>(rank);
}

}  // namespace miptqe

#endif  // MIPTQE_RREF_HPP_
