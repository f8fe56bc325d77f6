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

#ifndef MIPTQE_TESTS_ACCEPTANCE_CURVES_HPP_
#define MIPTQE_TESTS_ACCEPTANCE_CURVES_HPP_

#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "miptqe/ensemble.hpp"

namespace miptqe::acceptance {

struct PointStat {
  double mean = 0.0;
  double sem = 0.0;
};

// curves[L][i] = observable stats at p_values[i].
struct CurveSet {
  std::vector<double> p_values;
  std::map<std::uint32_t, std::vector<PointStat>> by_size;
};

struct SweepSettings {
  GeometryKind geometry = GeometryKind::square;
  ChannelTag tag = ChannelTag::dephasing;
  double q_noise = 0.0;
  double q_qe = 0.0;
  ObservableKind observable = ObservableKind::i3;
  std::uint32_t realizations = 2000;
  std::uint64_t seed = 0;
  InitialState initial = InitialState::pure_zero;
  std::uint32_t depth_factor = 10;       // depth = factor * L
  bool record_at_l = false;              // purification: value at t = L
  SimMode mode = SimMode::production;
};

inline CurveSet run_curves(const SweepSettings& s, const std::vector<std::uint32_t>& sizes,
                           const std::vector<double>& p_values) {
  std::vector<GridPoint> grid;
  std::uint64_t index = 0;
  for (const auto L : sizes) {
    for (const double p : p_values) {
      GridPoint g;
      g.L = L;
      g.p = p;
      g.q_n = s.q_noise;
      g.q_e = s.q_qe;
      g.grid_index = index++;
      g.spec.geometry = {s.geometry, L};
      g.spec.p = p;
      if (s.q_noise > 0 || s.q_qe > 0) {
        g.spec.channels.push_back({s.tag, s.q_noise, s.q_qe});
      }
      g.spec.initial = s.initial;
      g.spec.master_seed = derive_seed(s.seed, g.grid_index);
      if (s.record_at_l) {
        g.spec.depth_steps = L;
        g.spec.cadence = ObserveCadence::every_step;
        g.at_step = L;
      } else {
        g.spec.depth_steps = s.depth_factor * L;
        g.spec.cadence = ObserveCadence::final_step;
      }
      grid.push_back(std::move(g));
    }
  }
  EnsembleOptions opt;
  opt.realizations = s.realizations;
  opt.threads = 0;
  opt.mode = s.mode;
  const ObservableKind obs[1] = {s.observable};
  const auto rows = run_ensemble("acceptance", grid, obs, opt);

  CurveSet out;
  out.p_values = p_values;
  for (const auto& row : rows) {
    out.by_size[row.L].push_back({row.mean, row.stderr_});
  }
  return out;
}

// Sign-change location of curve(L_small) - curve(L_large), linearly
// interpolated. Multiple sign changes pick the one with the largest
// difference span; returns nullopt if the difference never changes sign.
inline std::optional<double> crossing_estimate(const CurveSet& curves,
                                               std::uint32_t l_small,
                                               std::uint32_t l_large) {
  const auto& a = curves.by_size.at(l_small);
  const auto& b = curves.by_size.at(l_large);
  std::optional<double> best;
  double best_span = -1;
  for (std::size_t i = 0; i + 1 < curves.p_values.size(); ++i) {
    const double d0 = a[i].mean - b[i].mean;
    const double d1 = a[i + 1].mean - b[i + 1].mean;
    if (d0 == 0 && d1 == 0) continue;
    if (d0 * d1 <= 0) {
      const double span = std::abs(d0) + std::abs(d1);
      if (span > best_span) {
        best_span = span;
        best = curves.p_values[i] +
               (curves.p_values[i + 1] - curves.p_values[i]) * (d0 / (d0 - d1));
      }
    }
  }
  return best;
}

inline std::string curves_summary(const CurveSet& curves) {
  std::ostringstream os;
  os.precision(4);
  for (const auto& [L, pts] : curves.by_size) {
    os << " L=" << L << ": [";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) os << ", ";
      os << pts[i].mean;
    }
    os << "]";
  }
  return os.str();
}

}  // namespace miptqe::acceptance

#endif  // MIPTQE_TESTS_ACCEPTANCE_CURVES_HPP_
