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

#ifndef MIPTQE_EXPERIMENTS_HPP_
#define MIPTQE_EXPERIMENTS_HPP_

#include <span>
#include <string>
#include <vector>

#include "miptqe/config.hpp"
#include "miptqe/ensemble.hpp"

namespace miptqe {

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::string extra_json;  // collapse fit / noise estimate / replica report
};

// Dispatches per config.experiment, runs the sweep over a worker pool,
// and persists results under config.output: results.csv, manifest.json,
// a partial.csv flushed per completed grid point (the resumption marker),
// plus an experiment-specific JSON where one applies. Re-running with an
// unchanged config and seed skips grid points already in partial.csv.
ExperimentOutput run_experiment(const ExperimentConfig& config);

// Builds the sweep grid for a trajectory experiment (exposed for tests).
std::vector<GridPoint> build_grid(const ExperimentConfig& config);

struct NoiseRateEstimate {
  struct PerSize {
    std::uint32_t L = 0;
    double ratio = 0.0;  // estimated q_n / q at the curve intersection
    double lo = 0.0, hi = 0.0;
  };
  std::vector<PerSize> per_size;
};

// Locates the p-independent point of the cee_half curves from a
// noise_estimate run: per size, quadratic fits of cee_half vs q_n/q for
// each p, averaged pairwise intersections inside the scanned range.
NoiseRateEstimate estimate_noise_rate(std::span<const ResultRow> rows);

std::string noise_estimate_json(const NoiseRateEstimate& est);

}  // namespace miptqe

#endif  // MIPTQE_EXPERIMENTS_HPP_
