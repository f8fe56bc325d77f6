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

#ifndef MIPTQE_CHANNELS_HPP_
#define MIPTQE_CHANNELS_HPP_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "miptqe/stabilizer_state.hpp"

namespace miptqe {

// Coupling dictionary, one entry per channel kind:
//   dephasing:    one fresh qubit in |0>, CNOT from the system qubit.
//   resetting:    one fresh qubit in |0>, SWAP with the system qubit.
//   depolarizing: two fresh qubits in a Bell state, SWAP with one member.
// A noise event traces the fresh qubits out; a QE event keeps them as
// ancillas (both Bell members for depolarizing).
enum class ChannelTag { dephasing, resetting, depolarizing };

std::uint32_t channel_fresh_count(ChannelTag tag);
std::string_view channel_name(ChannelTag tag);

// Appends the fresh register of `tag` to `state` and applies the coupling
// unitary at `site`. Returns the index of the first fresh qubit. The
// caller decides whether the fresh qubits become environment or ancilla.
std::uint32_t stinespring_couple(StabilizerState& state, std::uint32_t site, ChannelTag tag);

// System-only stabilizer rows plus the discard counter x. Stored rows are
// the system restrictions of the true (system + ancilla) generators; they
// need not commute and their signs carry no meaning. Every entropy path
// uses GF(2) ranks of the stored rows, never the row count or the signs.
class CompressedState {
 public:
  // `eager` keeps the stored rows independent and x exact after every
  // channel event (full reduction per event). `deferred` postpones the
  // dependency sweep until the row bound is hit; all rank-based
  // observables are identical in the two modes.
  enum class Accounting { eager, deferred };

  CompressedState(std::uint32_t n, InitialState kind,
                  Accounting mode = Accounting::eager);

  std::uint32_t num_qubits() const { return num_system_; }
  std::uint32_t rows() const { return table_.rows(); }
  std::uint64_t discarded() const { return x_; }
  Accounting accounting() const { return mode_; }
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

  // Removes rows that are identity on the system, counting them into x.
  // Full reduction, so hidden GF(2) dependencies are absorbed as well.
  int normalize_rows();

  // S(M|A) = |M| - y. May be negative.
  int cee(const QubitRegion& m) const;

  // Rank of the stored rows restricted to the first qubit_cuts[i] qubits
  // of `qubit_order` (which must list every system qubit exactly once).
  std::vector<std::uint32_t> prefix_ranks(std::span<const std::uint32_t> qubit_order,
                                          std::span<const std::uint32_t> qubit_cuts) const;

  bool invariants_hold() const;

 private:
  MeasureResult measure_z_impl(std::uint32_t q, Rng* rng, const bool* forced);
  void apply_channel(std::uint32_t site, ChannelTag tag, bool keep_as_ancilla);
  void clear_definite(std::uint32_t q) { definite_z_[q] = 0; }
  void maybe_normalize();

  PauliTable table_;
  std::uint32_t num_system_ = 0;
  std::uint64_t x_ = 0;
  Accounting mode_ = Accounting::eager;
  // 0 = unknown, 1 = definite |0>, 2 = definite |1>. Purely an
  // optimization: avoids growing the row list on repeated measurements.
  std::vector<std::uint8_t> definite_z_;
};

}  // namespace miptqe

#endif  // MIPTQE_CHANNELS_HPP_
