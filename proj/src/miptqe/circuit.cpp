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

#include "miptqe/circuit.hpp"

#include <stdexcept>

#include "miptqe/env_twin.hpp"
#include "miptqe/rng.hpp"

namespace miptqe {

void CircuitSpec::validate() const {
  if (geometry.length < 2) throw std::invalid_argument("geometry needs length >= 2");
  if (geometry.length % 2 != 0) throw std::invalid_argument("length must be even");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("probability out of range: p");
  for (const auto& ch : channels) {
    if (ch.q_noise < 0.0 || ch.q_noise > 1.0 || ch.q_qe < 0.0 || ch.q_qe > 1.0) {
      throw std::invalid_argument("probability out of range: q");
    }
  }
  if (resolved_depth() < 1) throw std::invalid_argument("depth must be at least 1");
}

namespace {

struct ObservablePlan {
  std::vector<ObservableKind> kinds;
  Partition4 part;
  bool need_part = false;
  QubitRegion half;
  bool need_half = false;
  QubitRegion full;

  ObservablePlan(const Geometry& g, std::span<const ObservableKind> obs)
      : kinds(obs.begin(), obs.end()) {
    for (auto k : kinds) {
      if (k == ObservableKind::i3) need_part = true;
      if (k == ObservableKind::cee_half) need_half = true;
    }
    if (need_part) part = partition_four(g);
    if (need_half) half = half_region(g);
    full = QubitRegion::full(g.num_sites());
  }

  template <class State>
  double evaluate(const State& state, ObservableKind kind, std::uint32_t n_sys) const {
    switch (kind) {
      case ObservableKind::i3:
        return conditional_i3(state, part, n_sys);
      case ObservableKind::cee_half:
        return conditional_entropy(state, half, n_sys);
      case ObservableKind::cee_full:
        return conditional_entropy(state, full, n_sys);
    }
    return 0.0;
  }
};

template <class State>
TrajectoryRecord run_loop(const CircuitSpec& spec, State& state,
                          std::span<const ObservableKind> observables,
                          std::uint64_t trajectory_index) {
  const std::uint32_t n = spec.geometry.num_sites();
  const std::uint32_t depth = spec.resolved_depth();
  const LayerSchedule schedule = build_schedule(spec.geometry);
  const ObservablePlan plan(spec.geometry, observables);
  Rng rng(derive_seed(spec.master_seed, trajectory_index));

  TrajectoryRecord rec;
  rec.values.resize(plan.kinds.size());
  rec.counts.reserve(depth);

  std::vector<double> acc(plan.kinds.size());
  for (std::uint32_t step = 1; step <= depth; ++step) {
    const bool record = spec.cadence == ObserveCadence::every_step || step == depth;
    std::fill(acc.begin(), acc.end(), 0.0);
    StepCounts counts;
    for (const auto& layer : schedule.layers) {
      for (const auto& [a, b] : layer) {
        state.apply_clifford2(sample_two_qubit_clifford(rng), a, b);
      }
      for (std::uint32_t site = 0; site < n; ++site) {
        if (spec.p > 0.0 && rng.uniform() < spec.p) {
          state.measure_z(site, rng);
          ++counts.measurements;
        }
        for (const auto& ch : spec.channels) {
          if (ch.q_noise > 0.0 && rng.uniform() < ch.q_noise) {
            state.apply_noise_at(site, ch.tag);
            ++counts.noise;
          }
          if (ch.q_qe > 0.0 && rng.uniform() < ch.q_qe) {
            state.apply_qe_at(site, ch.tag);
            ++counts.qe;
          }
        }
      }
      if (record) {
        for (std::size_t k = 0; k < plan.kinds.size(); ++k) {
          acc[k] += plan.evaluate(state, plan.kinds[k], n);
        }
      }
    }
    rec.counts.push_back(counts);
    if (record) {
      rec.steps.push_back(step);
      for (std::size_t k = 0; k < plan.kinds.size(); ++k) {
        rec.values[k].push_back(acc[k] / static_cast<double>(schedule.layers.size()));
      }
    }
  }
  return rec;
}

}  // namespace

TrajectoryRecord run_trajectory(const CircuitSpec& spec,
                                std::span<const ObservableKind> observables,
                                std::uint64_t trajectory_index, SimMode mode) {
  spec.validate();
  const std::uint32_t n = spec.geometry.num_sites();
  if (mode == SimMode::production) {
    CompressedState state(n, spec.initial, CompressedState::Accounting::deferred);
    return run_loop(spec, state, observables, trajectory_index);
  }
  EnvTwinState state(n, spec.initial);
  return run_loop(spec, state, observables, trajectory_index);
}

std::vector<double> purification_curve(const CircuitSpec& spec,
                                       std::uint64_t trajectory_index) {
  if (spec.initial != InitialState::maximally_mixed) {
    throw std::invalid_argument("purification runs start from the maximally mixed state");
  }
  CircuitSpec s = spec;
  s.cadence = ObserveCadence::every_step;
  const ObservableKind obs[1] = {ObservableKind::cee_full};
  return run_trajectory(s, obs, trajectory_index).values[0];
}

}  // namespace miptqe
