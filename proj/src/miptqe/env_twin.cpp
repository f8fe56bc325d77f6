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

#include "miptqe/env_twin.hpp"

#include <cassert>
#include <stdexcept>

namespace miptqe {

EnvTwinState::EnvTwinState(std::uint32_t n, InitialState kind)
    : table_(n, 2 * n + 8), num_system_(n), definite_z_(n, 0) {
  if (n == 0) throw std::invalid_argument("qubit count must be at least 1");
  if (kind == InitialState::pure_zero) {
    for (std::uint32_t q = 0; q < n; ++q) {
      table_.append_z_row(q, false);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      definite_z_[q] = 1;
    }
  }
}

void EnvTwinState::check_system_target(std::uint32_t q) const {
  if (q >= num_system_) throw std::invalid_argument("qubit index out of range");
}

void EnvTwinState::apply_h(std::uint32_t q) {
  check_system_target(q);
  table_.apply_h(q);
  definite_z_[q] = 0;
}

void EnvTwinState::apply_p(std::uint32_t q) {
  check_system_target(q);
  table_.apply_p(q);
  definite_z_[q] = 0;
}

void EnvTwinState::apply_cnot(std::uint32_t c, std::uint32_t t) {
  check_system_target(c);
  check_system_target(t);
  if (c == t) throw std::invalid_argument("gate targets must be distinct");
  table_.apply_cnot(c, t);
  definite_z_[c] = definite_z_[t] = 0;
}

void EnvTwinState::apply_swap(std::uint32_t a, std::uint32_t b) {
  check_system_target(a);
  check_system_target(b);
  if (a == b) throw std::invalid_argument("gate targets must be distinct");
  table_.apply_swap(a, b);
  std::swap(definite_z_[a], definite_z_[b]);
}

void EnvTwinState::apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b) {
  check_system_target(a);
  check_system_target(b);
  if (a == b) throw std::invalid_argument("gate targets must be distinct");
  table_.apply_clifford2(gate, a, b);
  definite_z_[a] = definite_z_[b] = 0;
}

std::uint32_t EnvTwinState::find_env_lead(std::uint32_t r) const {
  for (std::uint32_t q = num_system_; q < table_.num_qubits(); ++q) {
    if (table_.x(r, q)) return 2 * q;
    if (table_.z(r, q)) return 2 * q + 1;
  }
  return kClean;
}

void EnvTwinState::unregister(std::uint32_t r) {
  if (env_lead_[r] != kClean) {
    lead_owner_.erase(env_lead_[r]);
    env_lead_[r] = kClean;
  }
}

void EnvTwinState::reinsert_row(std::uint32_t r) {
  unregister(r);
  for (;;) {
    const std::uint32_t lead = find_env_lead(r);
    if (lead == kClean) return;
    const auto it = lead_owner_.find(lead);
    if (it == lead_owner_.end()) {
      lead_owner_.emplace(lead, r);
      env_lead_[r] = lead;
      return;
    }
    table_.mul_row(r, it->second);
    assert(!table_.row_is_identity(r));
  }
}

void EnvTwinState::remove_row(std::uint32_t r) {
  unregister(r);
  const std::uint32_t last = table_.rows() - 1;
  table_.remove_row(r);
  if (r != last) {
    env_lead_[r] = env_lead_[last];
    dirty_[r] = dirty_[last];
    if (env_lead_[r] != kClean) lead_owner_[env_lead_[r]] = r;
  }
  env_lead_.pop_back();
  dirty_.pop_back();
}

void EnvTwinState::sweep_dirty() {
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (dirty_[r]) {
      reinsert_row(r);
      dirty_[r] = 0;
    }
  }
}

MeasureResult EnvTwinState::measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced) {
  check_system_target(q);
  // Prefer an environment-clean pivot: multiplying it into the other
  // anticommuting rows leaves their environment parts untouched.
  std::uint32_t pivot = UINT32_MAX;
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (!table_.x(r, q)) continue;
    if (env_lead_[r] == kClean) {
      pivot = r;
      break;
    }
    if (pivot == UINT32_MAX) pivot = r;
  }
  if (pivot != UINT32_MAX) {
    const bool pivot_clean = env_lead_[pivot] == kClean;
    for (std::uint32_t r = 0; r < table_.rows(); ++r) {
      if (r == pivot || !table_.x(r, q)) continue;
      const bool anti = table_.mul_row(r, pivot);
      assert(!anti);
      (void)anti;
      if (!pivot_clean) mark_dirty(r);
    }
    const bool outcome = forced ? *forced : rng->bit();
    unregister(pivot);
    table_.clear_row(pivot);
    table_.set_z(pivot, q, true);
    table_.set_sign(pivot, outcome);
    if (!pivot_clean) sweep_dirty();
    definite_z_[q] = outcome ? 2 : 1;
    return {outcome, MeasureCase::random_replace};
  }

  if (definite_z_[q]) {
    const bool outcome = definite_z_[q] == 2;
    if (forced && *forced != outcome) {
      throw std::logic_error("forced outcome contradicts a definite qubit");
    }
    return {outcome, MeasureCase::deterministic};
  }

  std::vector<std::uint32_t> clean_rows;
  clean_rows.reserve(table_.rows());
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (env_lead_[r] == kClean) clean_rows.push_back(r);
  }
  const auto combo = solve_z_membership_rows(table_, clean_rows, num_system_, q);
  if (combo.has_value()) {
    PauliTable acc(table_.num_qubits(), table_.qubit_capacity());
    acc.append_zero_row();
    for (auto r : *combo) {
      const bool anti = acc.mul_row_from(0, table_, r);
      assert(!anti);
      (void)anti;
    }
    const bool outcome = acc.sign(0);
    if (forced && *forced != outcome) {
      throw std::logic_error("forced outcome contradicts a deterministic measurement");
    }
    definite_z_[q] = outcome ? 2 : 1;
    return {outcome, MeasureCase::deterministic};
  }

  const bool outcome = forced ? *forced : rng->bit();
  table_.append_z_row(q, outcome);
  env_lead_.push_back(kClean);
  dirty_.push_back(0);
  definite_z_[q] = outcome ? 2 : 1;
  return {outcome, MeasureCase::random_new};
}

MeasureResult EnvTwinState::measure_z(std::uint32_t q, Rng& rng) {
  return measure_z_impl(q, &rng, nullptr);
}

MeasureResult EnvTwinState::measure_z_forced(std::uint32_t q, bool outcome) {
  return measure_z_impl(q, nullptr, &outcome);
}

void EnvTwinState::apply_noise_at(std::uint32_t site, ChannelTag tag) {
  check_system_target(site);
  const std::uint32_t count = channel_fresh_count(tag);
  const std::uint32_t first = table_.add_qubits(count);

  switch (tag) {
    case ChannelTag::dephasing:
      table_.append_z_row(first, false);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_cnot(site, first);
      break;
    case ChannelTag::resetting:
      table_.append_z_row(first, false);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_swap(site, first);
      break;
    case ChannelTag::depolarizing: {
      const std::uint32_t xx = table_.append_zero_row();
      table_.set_x(xx, first, true);
      table_.set_x(xx, first + 1, true);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      const std::uint32_t zz = table_.append_zero_row();
      table_.set_z(zz, first, true);
      table_.set_z(zz, first + 1, true);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_swap(site, first);
      break;
    }
  }

  // Any row that picked up support on the fresh environment columns needs
  // its echelon slot refreshed.
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    bool touched = false;
    for (std::uint32_t k = 0; k < count && !touched; ++k) {
      touched = table_.row_has_support(r, first + k);
    }
    if (touched) mark_dirty(r);
  }
  sweep_dirty();

  switch (tag) {
    case ChannelTag::dephasing:
      break;
    case ChannelTag::resetting:
      definite_z_[site] = 1;
      break;
    case ChannelTag::depolarizing:
      definite_z_[site] = 0;
      break;
  }
}

void EnvTwinState::apply_qe_at(std::uint32_t site, ChannelTag tag) {
  check_system_target(site);
  const std::uint32_t count = channel_fresh_count(tag);
  const std::uint32_t first = table_.add_qubits(count);

  switch (tag) {
    case ChannelTag::dephasing:
      table_.append_z_row(first, false);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_cnot(site, first);
      break;
    case ChannelTag::resetting:
      table_.append_z_row(first, false);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_swap(site, first);
      break;
    case ChannelTag::depolarizing: {
      const std::uint32_t xx = table_.append_zero_row();
      table_.set_x(xx, first, true);
      table_.set_x(xx, first + 1, true);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      const std::uint32_t zz = table_.append_zero_row();
      table_.set_z(zz, first, true);
      table_.set_z(zz, first + 1, true);
      env_lead_.push_back(kClean);
      dirty_.push_back(0);
      table_.apply_swap(site, first);
      break;
    }
  }

  // Trace the freshly coupled ancilla immediately: local elimination over
  // its columns, then drop the rows holding the pivots.
  std::vector<std::uint32_t> pivot_rows;
  for (std::uint32_t k = 0; k < count; ++k) {
    for (int part = 0; part < 2; ++part) {
      const std::uint32_t q = first + k;
      const auto has_bit = [&](std::uint32_t r) {
        return part == 0 ? table_.x(r, q) : table_.z(r, q);
      };
      std::uint32_t pv = UINT32_MAX;
      for (std::uint32_t r = 0; r < table_.rows(); ++r) {
        if (!has_bit(r)) continue;
        bool is_prev = false;
        for (auto p : pivot_rows) is_prev |= (p == r);
        if (!is_prev) {
          pv = r;
          break;
        }
      }
      if (pv == UINT32_MAX) continue;
      for (std::uint32_t r = 0; r < table_.rows(); ++r) {
        if (r != pv && has_bit(r)) {
          table_.mul_row(r, pv);
          mark_dirty(r);
        }
      }
      pivot_rows.push_back(pv);
    }
  }
  std::sort(pivot_rows.begin(), pivot_rows.end(), std::greater<>());
  for (auto r : pivot_rows) remove_row(r);
  table_.release_qubits(count);
  sweep_dirty();

  switch (tag) {
    case ChannelTag::dephasing:
      break;
    case ChannelTag::resetting:
      definite_z_[site] = 1;
      break;
    case ChannelTag::depolarizing:
      definite_z_[site] = 0;
      break;
  }
}

int EnvTwinState::cond_entropy_given_env(const QubitRegion& m) const {
  if (!m.valid_for(num_system_)) throw std::invalid_argument("region exceeds system");
  std::vector<std::uint32_t> order;
  order.reserve(num_system_);
  for (std::uint32_t q = 0; q < num_system_; ++q) {
    if (!m.contains(q)) order.push_back(q);
  }
  const std::uint32_t mc_count = static_cast<std::uint32_t>(order.size());
  for (auto q : m.qubits()) order.push_back(q);
  const std::uint32_t cuts[2] = {mc_count, num_system_};
  const auto ranks = prefix_ranks(order, cuts);
  return static_cast<int>(m.size()) + static_cast<int>(ranks[0]) -
         static_cast<int>(ranks[1]);
}

std::vector<std::uint32_t> EnvTwinState::prefix_ranks(
    std::span<const std::uint32_t> qubit_order,
    std::span<const std::uint32_t> qubit_cuts) const {
  BitMatrix scratch;
  scratch.load(table_, qubit_order);
  std::vector<std::uint32_t> col_cuts(qubit_cuts.size());
  for (std::size_t i = 0; i < qubit_cuts.size(); ++i) col_cuts[i] = 2 * qubit_cuts[i];
  return scratch.ranks_at_cuts(col_cuts);
}

bool EnvTwinState::invariants_hold() const {
  for (std::uint32_t r = 0; r < table_.rows(); ++r) {
    if (dirty_[r]) return false;
    const std::uint32_t lead = find_env_lead(r);
    if (lead != env_lead_[r]) return false;
    if (lead != kClean) {
      const auto it = lead_owner_.find(lead);
      if (it == lead_owner_.end() || it->second != r) return false;
    }
    for (std::uint32_t s = r + 1; s < table_.rows(); ++s) {
      if (table_.rows_anticommute(r, s)) return false;
    }
  }
  BitMatrix scratch;
  scratch.load(table_);
  return scratch.rank() == table_.rows();
}

}  // namespace miptqe
