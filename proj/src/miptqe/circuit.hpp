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

#ifndef MIPTQE_CIRCUIT_HPP_
#define MIPTQE_CIRCUIT_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "miptqe/channels.hpp"
#include "miptqe/observables.hpp"
#include "miptqe/schedule.hpp"

namespace miptqe {

struct ChannelRates {
  ChannelTag tag = ChannelTag::dephasing;
  double q_noise = 0.0;
  double q_qe = 0.0;
};

enum class ObserveCadence { every_step, final_step };

// production: ancillas compressed, environment traced (the hot path).
// env_twin: environment retained, ancillas traced (information-exchange
// checks only).
enum class SimMode { production, env_twin };

struct CircuitSpec {
  Geometry geometry;
  double p = 0.0;
  std::vector<ChannelRates> channels;
  std::uint32_t depth_steps = 0;  // 0 means the default 10 * L
  InitialState initial = InitialState::pure_zero;
  ObserveCadence cadence = ObserveCadence::every_step;
  std::uint64_t master_seed = 0;

  std::uint32_t resolved_depth() const {
    return depth_steps ? depth_steps : 10 * geometry.length;
  }
  void validate() const;
};

struct StepCounts {
  std::uint32_t measurements = 0;
  std::uint32_t noise = 0;
  std::uint32_t qe = 0;
  bool operator==(const StepCounts&) const = default;
};

// Per recorded step: the layer-averaged value of each requested
// observable. Event counts are kept for every simulated step.
struct TrajectoryRecord {
  std::vector<std::uint32_t> steps;              // 1-based recorded step times
  std::vector<std::vector<double>> values;       // [observable][record index]
  std::vector<StepCounts> counts;                // per simulated step
  bool operator==(const TrajectoryRecord&) const = default;
};

// Runs one monitored-circuit trajectory. Per step and layer: fresh
// uniform two-qubit Cliffords on every brickwall pair, then per site the
// independent event draws in the fixed order measure -> noise -> QE.
// The RNG stream is derived from (spec.master_seed, trajectory_index).
TrajectoryRecord run_trajectory(const CircuitSpec& spec,
                                std::span<const ObservableKind> observables,
                                std::uint64_t trajectory_index,
                                SimMode mode = SimMode::production);

// S(S|A) after every step for one trajectory of a purification run
// (spec.initial must be maximally_mixed).
std::vector<double> purification_curve(const CircuitSpec& spec,
                                       std::uint64_t trajectory_index);

}  // namespace miptqe

#endif  // MIPTQE_CIRCUIT_HPP_
