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

#include "miptqe/channels.hpp"

#include <cassert>
#include <stdexcept>

#include "miptqe/rref.hpp"

namespace miptqe {

std::uint32_t channel_fresh_count(ChannelTag tag) {
  return tag == ChannelTag::depolarizing ? 2 : 1;
}

std::string_view channel_name(ChannelTag tag) {
  switch (tag) {
    case ChannelTag::dephasing: return "dephasing";
    case ChannelTag::resetting: return "resetting";
    case ChannelTag::depolarizing: return "depolarizing";
  }
  return "?";
}

std::uint32_t stinespring_couple(StabilizerState& state, std::uint32_t site, ChannelTag tag) {
  std::uint32_t first = 0;
  switch (tag) {
    case ChannelTag::dephasing:
      first = state.add_fresh_zero(1);
      state.apply_cnot(site, first);
      break;
    case ChannelTag::resetting:
      first = state.add_fresh_zero(1);
      state.apply_swap(site, first);
      break;
    case ChannelTag::depolarizing:
      first = state.add_fresh_bell();
      state.apply_swap(site, first);
      break;
  }
  return first;
}

CompressedState::CompressedState(std::uint32_t n, InitialState kind, Accounting mode)
    : table_(n, n + 2), num_system_(n), mode_(mode), definite_z_(n, 0) {
  if (n == 0) throw std::invalid_argument("qubit count must be at least 1");
  if (kind == InitialState::pure_zero) {
    for (std::uint32_t q = 0; q < n; ++q) {
      table_.append_z_row(q, false);
      definite_z_[q] = 1;
    }
  }
}

void CompressedState::apply_h(std::uint32_t q) {
  if (q >= num_system_) throw std::invalid_argument("qubit index out of range");
  table_.apply_h(q);
  clear_definite(q);
}

void CompressedState::apply_p(std::uint32_t q) {
  if (q >= num_system_) throw std::invalid_argument("qubit index out of range");
  table_.apply_p(q);
  clear_definite(q);
}

void CompressedState::apply_cnot(std::uint32_t c, std::uint32_t t) {
  if (c >= num_system_ || t >= num_system_ || c == t) {
    throw std::invalid_argument("bad gate targets");
  }
  table_.apply_cnot(c, t);
  clear_definite(c);
  clear_definite(t);
}

void CompressedState::apply_swap(std::uint32_t a, std::uint32_t b) {
  if (a >= num_system_ || b >= num_system_ || a == b) {
    throw std::invalid_argument("bad gate targets");
  }
  table_.apply_swap(a, b);
  std::swap(definite_z_[a], definite_z_[b]);
}

void CompressedState::apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b) {
  if (a >= num_system_ || b >= num_system_ || a == b) {
    throw std::invalid_argument("bad gate targets");
  }
  table_.apply_clifford2(gate, a, b);
  clear_definite(a);
  clear_definite(b);
}

MeasureResult CompressedState::measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced) {
  if (q >= num_system_) throw std::invalid_argument("qubit index out of range");
  std::uint32_t pivot = UINT32_MAX;
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (table_.x(r, q)) {
      pivot = r;
      break;
    }
  }
  if (pivot != UINT32_MAX) {
    for (std::uint32_t r = pivot + 1; r < table_.rows(); ++r) {
      if (table_.x(r, q)) table_.mul_row(r, pivot);
    }
    const bool outcome = forced ? *forced : rng->bit();
    table_.clear_row(pivot);
    table_.set_z(pivot, q, true);
    table_.set_sign(pivot, outcome);
    definite_z_[q] = outcome ? 2 : 1;
    // Replacing the pivot can make a hidden ancilla-borne dependency
    // explicit; eager accounting absorbs it on the spot.
    if (mode_ == Accounting::eager) normalize_rows();
    return {outcome, MeasureCase::random_replace};
  }

  if (definite_z_[q]) {
    const bool outcome = definite_z_[q] == 2;
    if (forced && *forced != outcome) {
      throw std::logic_error("forced outcome contradicts a definite qubit");
    }
    return {outcome, MeasureCase::deterministic};
  }

  if (mode_ == Accounting::eager) {
    if (solve_z_membership(table_, q).has_value()) {
      // In the compressed representation a stored-row combination may hide
      // ancilla support, so the outcome sign is not recoverable; the state
      // (row space) is unchanged either way.
      const bool outcome = forced ? *forced : rng->bit();
      definite_z_[q] = outcome ? 2 : 1;
      return {outcome, MeasureCase::deterministic};
    }
    const bool outcome = forced ? *forced : rng->bit();
    table_.append_z_row(q, outcome);
    definite_z_[q] = outcome ? 2 : 1;
    return {outcome, MeasureCase::random_new};
  }

  const bool outcome = forced ? *forced : rng->bit();
  table_.append_z_row(q, outcome);
  definite_z_[q] = outcome ? 2 : 1;
  maybe_normalize();
  return {outcome, MeasureCase::random_new};
}

MeasureResult CompressedState::measure_z(std::uint32_t q, Rng& rng) {
  return measure_z_impl(q, &rng, nullptr);
}

MeasureResult CompressedState::measure_z_forced(std::uint32_t q, bool outcome) {
  return measure_z_impl(q, nullptr, &outcome);
}

void CompressedState::apply_channel(std::uint32_t site, ChannelTag tag, bool keep_as_ancilla) {
  if (site >= num_system_) throw std::invalid_argument("qubit index out of range");
  const std::uint32_t count = channel_fresh_count(tag);
  const std::uint32_t first = table_.add_qubits(count);
  assert(first == num_system_);

  switch (tag) {
    case ChannelTag::dephasing:
      table_.append_z_row(first, false);
      table_.apply_cnot(site, first);
      break;
    case ChannelTag::resetting:
      table_.append_z_row(first, false);
      table_.apply_swap(site, first);
      break;
    case ChannelTag::depolarizing: {
      const std::uint32_t xx = table_.append_zero_row();
      table_.set_x(xx, first, true);
      table_.set_x(xx, first + 1, true);
      const std::uint32_t zz = table_.append_zero_row();
      table_.set_z(zz, first, true);
      table_.set_z(zz, first + 1, true);
      table_.apply_swap(site, first);
      break;
    }
  }

  std::vector<std::uint32_t> fresh(count);
  for (std::uint32_t k = 0; k < count; ++k) fresh[k] = first + k;
  const int pivots = rref_columns(table_, fresh);

  for (int r = pivots - 1; r >= 0; --r) {
    if (!keep_as_ancilla) {
      table_.remove_row(static_cast<std::uint32_t>(r));
      continue;
    }
    bool identity_on_system = true;
    for (std::uint32_t q = 0; q < num_system_ && identity_on_system; ++q) {
      if (table_.row_has_support(static_cast<std::uint32_t>(r), q)) identity_on_system = false;
    }
    if (identity_on_system) {
      table_.remove_row(static_cast<std::uint32_t>(r));
      ++x_;
    } else {
      for (std::uint32_t k = 0; k < count; ++k) {
        table_.set_x(static_cast<std::uint32_t>(r), first + k, false);
        table_.set_z(static_cast<std::uint32_t>(r), first + k, false);
      }
    }
  }
  table_.release_qubits(count);

  // Channel-specific effect on the definite-Z cache.
  switch (tag) {
    case ChannelTag::dephasing:
      break;  // a definite Z eigenstate stays definite
    case ChannelTag::resetting:
      definite_z_[site] = 1;
      break;
    case ChannelTag::depolarizing:
      clear_definite(site);
      break;
  }

  if (mode_ == Accounting::eager) {
    normalize_rows();
  } else {
    maybe_normalize();
  }
}

void CompressedState::apply_noise_at(std::uint32_t site, ChannelTag tag) {
  apply_channel(site, tag, false);
}

void CompressedState::apply_qe_at(std::uint32_t site, ChannelTag tag) {
  apply_channel(site, tag, true);
}

int CompressedState::normalize_rows() {
  const int removed = rref_in_place(table_, {});
  x_ += static_cast<std::uint64_t>(removed);
  return removed;
}

void CompressedState::maybe_normalize() {
  if (table_.rows() > 2 * num_system_ + 16) normalize_rows();
}

int CompressedState::cee(const QubitRegion& m) const {
  if (!m.valid_for(num_system_)) throw std::invalid_argument("region exceeds qubit count");
  if (m.empty()) return 0;
  const QubitRegion mc = m.complement(num_system_);
  std::vector<std::uint32_t> order(mc.qubits());
  order.insert(order.end(), m.qubits().begin(), m.qubits().end());
  const std::uint32_t cuts_q[2] = {static_cast<std::uint32_t>(mc.size()), num_system_};
  const auto ranks = prefix_ranks(order, cuts_q);
  const std::uint32_t y = ranks[1] - ranks[0];
  return static_cast<int>(m.size()) - static_cast<int>(y);
}

std::vector<std::uint32_t> CompressedState::prefix_ranks(
    std::span<const std::uint32_t> qubit_order,
    std::span<const std::uint32_t> qubit_cuts) const {
  BitMatrix scratch;
  scratch.load(table_, qubit_order);
  std::vector<std::uint32_t> col_cuts(qubit_cuts.size());
  for (std::size_t i = 0; i < qubit_cuts.size(); ++i) col_cuts[i] = 2 * qubit_cuts[i];
  return scratch.ranks_at_cuts(col_cuts);
}

bool CompressedState::invariants_hold() const {
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (table_.row_is_identity(r)) return false;
  }
  if (mode_ == Accounting::eager) {
    BitMatrix scratch;
    scratch.load(table_);
    if (scratch.rank() != table_.rows()) return false;
    if (table_.rows() > 2 * num_system_) return false;
  }
  return true;
}

}  // namespace miptqe
