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

#ifndef MIPTQE_STABILIZER_STATE_HPP_
#define MIPTQE_STABILIZER_STATE_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "miptqe/clifford2.hpp"
#include "miptqe/pauli_table.hpp"
#include "miptqe/region.hpp"
#include "miptqe/rng.hpp"

namespace miptqe {

enum class InitialState { pure_zero, maximally_mixed };

enum class MeasureCase { deterministic, random_new, random_replace };

struct MeasureResult {
  bool outcome = false;
  MeasureCase kase = MeasureCase::deterministic;
};

// A stabilizer state on n qubits: l <= n independent, pairwise commuting
// signed Pauli generators. l == n means pure. Signs are tracked through
// gates and measurements so deterministic outcomes are exact; entropy
// paths never consult them.
class StabilizerState {
 public:
  StabilizerState() = default;
  StabilizerState(std::uint32_t n, InitialState kind);

  static StabilizerState zero_state(std::uint32_t n) {
    return StabilizerState(n, InitialState::pure_zero);
  }
  static StabilizerState maximally_mixed(std::uint32_t n) {
    return StabilizerState(n, InitialState::maximally_mixed);
  }

  std::uint32_t num_qubits() const { return table_.num_qubits(); }
  std::uint32_t num_generators() const { return table_.rows(); }
  bool pure() const { return table_.rows() == table_.num_qubits(); }

  const PauliTable& table() const { return table_; }
  PauliTable& mutable_table() { return table_; }

  void apply_h(std::uint32_t q);
  void apply_p(std::uint32_t q);
  void apply_cnot(std::uint32_t c, std::uint32_t t);
  void apply_swap(std::uint32_t a, std::uint32_t b);
  void apply_clifford2(Clifford2 gate, std::uint32_t a, std::uint32_t b);

  MeasureResult measure_z(std::uint32_t q, Rng& rng);
  // Replays a recorded outcome. Throws if the outcome contradicts a
  // deterministic measurement.
  MeasureResult measure_z_forced(std::uint32_t q, bool outcome);

  // Row-reduces the generators so that support on the listed qubits is
  // concentrated in as few generators as possible (reduced row echelon
  // over the prioritized columns, remaining columns after). The stabilizer
  // group is unchanged. Returns the number of all-zero rows removed
  // (always 0 for a valid state; nonzero only for types that waive
  // independence and call through this path).
  int gaussian_eliminate(std::span<const std::uint32_t> priority_qubits);

  // Appends fresh qubits in |0>, returning the first new index.
  std::uint32_t add_fresh_zero(std::uint32_t count);
  // Appends two fresh qubits in a Bell state, returning the first index.
  std::uint32_t add_fresh_bell();

  StabilizerState trace_out(const QubitRegion& region) const;

  // S(M) = |M| - |G_M| in bits.
  int entropy_region(const QubitRegion& m) const;

  // Independence plus pairwise commutation; used by tests and debug checks.
  bool invariants_hold() const;

 private:
  MeasureResult measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced);
  void check_targets(std::uint32_t a, std::uint32_t b) const;
  void check_target(std::uint32_t q) const;

  PauliTable table_;
};

// Z_q membership solve against the rows of `table`: if Z_q is in the row
// space (ignoring signs), returns the combining row indices.
std::optional<std::vector<std::uint32_t>> solve_z_membership(const PauliTable& table,
                                                             std::uint32_t q);

}  // namespace miptqe

#endif  // MIPTQE_STABILIZER_STATE_HPP_
