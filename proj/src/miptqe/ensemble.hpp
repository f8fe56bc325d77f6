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

#ifndef MIPTQE_ENSEMBLE_HPP_
#define MIPTQE_ENSEMBLE_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "miptqe/circuit.hpp"

namespace miptqe {

inline constexpr const char* kResultCsvHeader =
    "experiment,L,p,q_n,q_e,observable,mean,stderr,n_samples,wall_seconds";

struct ResultRow {
  std::string experiment;
  std::uint32_t L = 0;
  double p = 0.0, q_n = 0.0, q_e = 0.0;
  std::string observable;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t n_samples = 0;
  double wall_seconds = 0.0;
};

struct GridPoint {
  CircuitSpec spec;  // master_seed already derived for this grid point
  std::uint32_t L = 0;
  double p = 0.0, q_n = 0.0, q_e = 0.0;
  std::uint64_t grid_index = 0;
  // Which recorded step becomes the scalar per-trajectory value:
  // 0 = the last record, otherwise the record at this 1-based step.
  std::uint32_t at_step = 0;
};

struct EnsembleOptions {
  std::uint32_t realizations = 1;
  std::uint32_t threads = 0;  // 0 = hardware concurrency
  SimMode mode = SimMode::production;
};

// Runs realizations x grid points over a worker pool. Trajectory values
// are stored per (grid, observable, trajectory index) and reduced in
// fixed index order, so results do not depend on the thread count.
// `on_grid_done` (optional) fires once per completed grid point with its
// aggregated rows, in arbitrary completion order.
std::vector<ResultRow> run_ensemble(
    const std::string& experiment_id, std::span<const GridPoint> grid,
    std::span<const ObservableKind> observables, const EnsembleOptions& options,
    const std::function<void(std::span<const ResultRow>)>& on_grid_done = {});

// Exact CSV schema helpers; the header string is bit-exact.
std::string format_rows_csv(std::span<const ResultRow> rows, bool with_header);
void write_results_csv(std::span<const ResultRow> rows, const std::string& path);
std::vector<ResultRow> read_results_csv(const std::string& path);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace miptqe

#endif  // MIPTQE_ENSEMBLE_HPP_
