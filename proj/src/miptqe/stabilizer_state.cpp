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

#include "miptqe/stabilizer_state.hpp"

#include <cassert>
#include <stdexcept>

#include "miptqe/rref.hpp"

namespace miptqe {

StabilizerState::StabilizerState(std::uint32_t n, InitialState kind)
    : table_(n, n) {
  if (n == 0) throw std::invalid_argument("qubit count must be at least 1");
  if (kind == InitialState::pure_zero) {
    for (std::uint32_t q = 0; q < n; ++q) table_.append_z_row(q, false);
  }
}

void StabilizerState::check_target(std::uint32_t q) const {
  if (q >= table_.num_qubits()) throw std::invalid_argument("qubit index out of range");
}

void StabilizerState::check_targets(std::uint32_t a, std::uint32_t b) const {
  check_target(a);
  check_target(b);
  if (a == b) throw std::invalid_argument("gate targets must be distinct");
}

void StabilizerState::apply_h(std::uint32_t q) {
  check_target(q);
  table_.apply_h(q);
}

void StabilizerState::apply_p(std::uint32_t q) {
  check_target(q);
  table_.apply_p(q);
}

void StabilizerState::apply_cnot(std::uint32_t c, std::uint32_t t) {
  check_targets(c, t);
  table_.apply_cnot(c, t);
}

void StabilizerState::apply_swap(std::uint32_t a, std::uint32_t b) {
  check_targets(a, b);
  table_.apply_swap(a, b);
}

void StabilizerState::apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b) {
  check_targets(a, b);
  table_.apply_clifford2(gate, a, b);
}

std::optional<std::vector<std::uint32_t>> solve_z_membership(const PauliTable& table,
                                                             std::uint32_t q) {
  std::vector<std::uint32_t> all(table.rows());
  for (std::uint32_t r = 0; r < table.rows(); ++r) all[r] = r;
  return solve_z_membership_rows(table, all, table.num_qubits(), q);
}

MeasureResult StabilizerState::measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced) {
  check_target(q);
  std::uint32_t pivot = UINT32_MAX;
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (table_.x(r, q)) {
      pivot = r;
      break;
    }
  }
  if (pivot != UINT32_MAX) {
    for (std::uint32_t r = pivot + 1; r < table_.rows(); ++r) {
      if (table_.x(r, q)) {
        const bool anti = table_.mul_row(r, pivot);
        assert(!anti);
        (void)anti;
      }
    }
    const bool outcome = forced ? *forced : rng->bit();
    table_.clear_row(pivot);
    table_.set_z(pivot, q, true);
    table_.set_sign(pivot, outcome);
    return {outcome, MeasureCase::random_replace};
  }

  auto combo = solve_z_membership(table_, q);
  if (combo.has_value()) {
    PauliTable acc(table_.num_qubits(), table_.qubit_capacity());
    acc.append_zero_row();
    for (auto r : *combo) {
      const bool anti = acc.mul_row_from(0, table_, r);
      assert(!anti);
      (void)anti;
    }
#ifndef NDEBUG
    for (std::uint32_t qq = 0; qq < table_.num_qubits(); ++qq) {
      assert(!acc.x(0, qq));
      assert(acc.z(0, qq) == (qq == q));
    }
#endif
    const bool outcome = acc.sign(0);
    if (forced && *forced != outcome) {
      throw std::logic_error("forced outcome contradicts a deterministic measurement");
    }
    return {outcome, MeasureCase::deterministic};
  }

  const bool outcome = forced ? *forced : rng->bit();
  table_.append_z_row(q, outcome);
  return {outcome, MeasureCase::random_new};
}

MeasureResult StabilizerState::measure_z(std::uint32_t q, Rng& rng) {
  return measure_z_impl(q, &rng, nullptr);
}

MeasureResult StabilizerState::measure_z_forced(std::uint32_t q, bool outcome) {
  return measure_z_impl(q, nullptr, &outcome);
}

int StabilizerState::gaussian_eliminate(std::span<const std::uint32_t> priority_qubits) {
  return rref_in_place(table_, priority_qubits);
}

std::uint32_t StabilizerState::add_fresh_zero(std::uint32_t count) {
  const std::uint32_t first = table_.add_qubits(count);
  for (std::uint32_t k = 0; k < count; ++k) table_.append_z_row(first + k, false);
  return first;
}

std::uint32_t StabilizerState::add_fresh_bell() {
  const std::uint32_t first = table_.add_qubits(2);
  const std::uint32_t xx = table_.append_zero_row();
  table_.set_x(xx, first, true);
  table_.set_x(xx, first + 1, true);
  const std::uint32_t zz = table_.append_zero_row();
  table_.set_z(zz, first, true);
  table_.set_z(zz, first + 1, true);
  return first;
}

StabilizerState StabilizerState::trace_out(const QubitRegion& region) const {
  const std::uint32_t n = table_.num_qubits();
  if (!region.valid_for(n)) throw std::invalid_argument("region exceeds qubit count");
  StabilizerState copy = *this;
  copy.gaussian_eliminate(region.qubits());

  const QubitRegion kept = region.complement(n);
  StabilizerState out;
  out.table_ = PauliTable(static_cast<std::uint32_t>(kept.size()),
                          static_cast<std::uint32_t>(kept.size()));
  for (std::uint32_t r = 0; r < copy.table_.rows(); ++r) {
    bool in_region = false;
    for (auto q : region.qubits()) {
      if (copy.table_.row_has_support(r, q)) {
        in_region = true;
        break;
      }
    }
    if (in_region) continue;
    const std::uint32_t nr = out.table_.append_zero_row();
    for (std::size_t k = 0; k < kept.qubits().size(); ++k) {
      const std::uint32_t q = kept.qubits()[k];
      out.table_.set_x(nr, static_cast<std::uint32_t>(k), copy.table_.x(r, q));
      out.table_.set_z(nr, static_cast<std::uint32_t>(k), copy.table_.z(r, q));
    }
    out.table_.set_sign(nr, copy.table_.sign(r));
  }
  return out;
}

int StabilizerState::entropy_region(const QubitRegion& m) const {
  const std::uint32_t n = table_.num_qubits();
  if (!m.valid_for(n)) throw std::invalid_argument("region exceeds qubit count");
  if (m.empty()) return 0;
  const QubitRegion mc = m.complement(n);
  BitMatrix scratch;
  scratch.load(table_, mc.qubits());
  const std::uint32_t rank_mc = scratch.rank();
  return static_cast<int>(m.size()) - static_cast<int>(table_.rows() - rank_mc);
}

bool StabilizerState::invariants_hold() const {
  for (std::uint32_t a = 0; a < table_.rows(); ++a) {
    if (table_.row_is_identity(a)) return false;
    for (std::uint32_t b = a + 1; b < table_.rows(); ++b) {
      if (table_.rows_anticommute(a, b)) return false;
    }
  }
  BitMatrix scratch;
  scratch.load(table_);
  return scratch.rank() == table_.rows();
}

}  // namespace miptqe
