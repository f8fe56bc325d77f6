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

#ifndef MIPTQE_ENV_TWIN_HPP_
#define MIPTQE_ENV_TWIN_HPP_

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "miptqe/channels.hpp"
#include "miptqe/stabilizer_state.hpp"

namespace miptqe {

// Twin simulation mode for the information-exchange check: environment
// qubits born from noise events are retained explicitly, ancilla qubits
// from QE events are traced out on the spot. The state is a genuine
// stabilizer state over system + environment, so S(M|E) = S(M,E) - S(E)
// reduces to ranks over system columns.
//
// Rows carrying environment support are kept in an incremental echelon
// over the environment columns (each such row owns a distinct leading
// environment bit). Any zero-environment group element therefore lies in
// the span of the environment-clean rows, which makes the deterministic-
// measurement test a small solve instead of a full-width elimination.
class EnvTwinState {
 public:
  EnvTwinState(std::uint32_t n, InitialState kind);

  std::uint32_t num_system() const { return num_system_; }
  std::uint32_t num_env() const { return table_.num_qubits() - num_system_; }
  std::uint32_t rows() const { return table_.rows(); }
  const PauliTable& table() const { return table_; }

  void apply_h(std::uint32_t q);
  void apply_p(std::uint32_t q);
  void apply_cnot(std::uint32_t c, std::uint32_t t);
  void apply_swap(std::uint32_t a, std::uint32_t b);
  void apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b);

  MeasureResult measure_z(std::uint32_t q, Rng& rng);
  MeasureResult measure_z_forced(std::uint32_t q, bool outcome);

  void apply_noise_at(std::uint32_t site, ChannelTag tag);
  void apply_qe_at(std::uint32_t site, ChannelTag tag);

  // S(M|E) in bits, M a subset of the system qubits.
  int cond_entropy_given_env(const QubitRegion& m) const;

  // Rank of the generators restricted to prefixes of `qubit_order`
  // (system qubits only), as in CompressedState::prefix_ranks.
  std::vector<std::uint32_t> prefix_ranks(std::span<const std::uint32_t> qubit_order,
                                          std::span<const std::uint32_t> qubit_cuts) const;

  bool invariants_hold() const;

 private:
  static constexpr std::uint32_t kClean = UINT32_MAX;

  MeasureResult measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced);
  void check_system_target(std::uint32_t q) const;
  std::uint32_t find_env_lead(std::uint32_t r) const;
  void unregister(std::uint32_t r);
  void reinsert_row(std::uint32_t r);
  void remove_row(std::uint32_t r);
  void sweep_dirty();
  void mark_dirty(std::uint32_t r) { dirty_[r] = 1; }

  PauliTable table_;
  std::uint32_t num_system_ = 0;
  std::vector<std::uint32_t> env_lead_;  // per row; kClean if no env support
  std::vector<std::uint8_t> dirty_;
  std::unordered_map<std::uint32_t, std::uint32_t> lead_owner_;
  std::vector<std::uint8_t> definite_z_;
};

}  // namespace miptqe

#endif  // MIPTQE_ENV_TWIN_HPP_
