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

#include "miptqe/ensemble.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace miptqe {

namespace {

double trajectory_value(const TrajectoryRecord& rec, std::size_t obs_index,
                        std::uint32_t at_step) {
  const auto& values = rec.values[obs_index];
  if (values.empty()) throw std::logic_error("trajectory produced no records");
  if (at_step == 0) return values.back();
  for (std::size_t i = 0; i < rec.steps.size(); ++i) {
    if (rec.steps[i] == at_step) return values[i];
  }
  throw std::logic_error("requested step was not recorded");
}

}  // namespace

std::vector<ResultRow> run_ensemble(
    const std::string& experiment_id, std::span<const GridPoint> grid,
    std::span<const ObservableKind> observables, const EnsembleOptions& options,
    const std::function<void(std::span<const ResultRow>)>& on_grid_done) {
  const std::uint32_t n_grid = static_cast<std::uint32_t>(grid.size());
  const std::uint32_t n_obs = static_cast<std::uint32_t>(observables.size());
  const std::uint32_t n_traj = options.realizations;
  std::uint32_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;

  // values[grid][obs][traj]
  std::vector<std::vector<std::vector<double>>> values(n_grid);
  for (auto& per_obs : values) {
    per_obs.assign(n_obs, std::vector<double>(n_traj, 0.0));
  }
  std::vector<double> wall(n_grid, 0.0);
  std::vector<std::atomic<std::uint32_t>> done(n_grid);
  for (auto& d : done) d.store(0);
  std::mutex wall_mutex;
  std::mutex grid_done_mutex;
  std::vector<ResultRow> all_rows;
  std::mutex rows_mutex;

  const auto aggregate_grid = [&](std::uint32_t g) {
    std::vector<ResultRow> rows;
    for (std::uint32_t k = 0; k < n_obs; ++k) {
      double sum = 0.0, sumsq = 0.0;
      for (std::uint32_t t = 0; t < n_traj; ++t) {
        const double v = values[g][k][t];
        sum += v;
        sumsq += v * v;
      }
      const double mean = sum / n_traj;
      double sem = 0.0;
      if (n_traj > 1) {
        const double var = std::max(0.0, (sumsq - n_traj * mean * mean) / (n_traj - 1));
        sem = std::sqrt(var / n_traj);
      }
      ResultRow row;
      row.experiment = experiment_id;
      row.L = grid[g].L;
      row.p = grid[g].p;
      row.q_n = grid[g].q_n;
      row.q_e = grid[g].q_e;
      row.observable = std::string(observable_name(observables[k]));
      row.mean = mean;
      row.stderr_ = sem;
      row.n_samples = n_traj;
      row.wall_seconds = wall[g];
      rows.push_back(std::move(row));
    }
    return rows;
  };

  std::atomic<std::uint64_t> next_task{0};
  const std::uint64_t total_tasks = static_cast<std::uint64_t>(n_grid) * n_traj;
  std::atomic<bool> failed{false};
  std::string failure_message;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t task = next_task.fetch_add(1);
      if (task >= total_tasks || failed.load()) return;
      const std::uint32_t g = static_cast<std::uint32_t>(task / n_traj);
      const std::uint32_t t = static_cast<std::uint32_t>(task % n_traj);
      try {
        const auto start = std::chrono::steady_clock::now();
        const TrajectoryRecord rec =
            run_trajectory(grid[g].spec, observables, t, options.mode);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        for (std::uint32_t k = 0; k < n_obs; ++k) {
          values[g][k][t] = trajectory_value(rec, k, grid[g].at_step);
        }
        {
          std::lock_guard lock(wall_mutex);
          wall[g] += secs;
        }
        if (done[g].fetch_add(1) + 1 == n_traj) {
          auto rows = aggregate_grid(g);
          if (on_grid_done) {
            std::lock_guard lock(grid_done_mutex);
            on_grid_done(rows);
          }
          std::lock_guard lock(rows_mutex);
          all_rows.insert(all_rows.end(), rows.begin(), rows.end());
        }
      } catch (const std::exception& e) {
        failed.store(true);
        std::lock_guard lock(failure_mutex);
        if (failure_message.empty()) failure_message = e.what();
      }
    }
  };

  std::vector<std::thread> pool;
  for (std::uint32_t i = 0; i + 1 < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failed.load()) throw std::runtime_error("ensemble failed: " + failure_message);

  // Deterministic final ordering: grid order, observable order.
  std::vector<ResultRow> ordered;
  ordered.reserve(static_cast<std::size_t>(n_grid) * n_obs);
  for (std::uint32_t g = 0; g < n_grid; ++g) {
    auto rows = aggregate_grid(g);
    ordered.insert(ordered.end(), rows.begin(), rows.end());
  }
  return ordered;
}

std::string format_double(double v) {
  for (int prec = 6; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return "nan";
}

std::string format_rows_csv(std::span<const ResultRow> rows, bool with_header) {
  std::ostringstream os;
  if (with_header) os << kResultCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.L << ',' << format_double(r.p) << ','
       << format_double(r.q_n) << ',' << format_double(r.q_e) << ',' << r.observable << ','
       << format_double(r.mean) << ',' << format_double(r.stderr_) << ',' << r.n_samples
       << ',' << format_double(r.wall_seconds) << "\n";
  }
  return os.str();
}

void write_results_csv(std::span<const ResultRow> rows, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << format_rows_csv(rows, true);
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::vector<ResultRow> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty results file: " + path);
  if (line != kResultCsvHeader) {
    throw std::runtime_error("unexpected results header in " + path + ": " + line);
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string field;
    ResultRow r;
    const auto next = [&] {
      if (!std::getline(ss, field, ',')) {
        throw std::runtime_error("short row in " + path + ": " + line);
      }
      return field;
    };
    r.experiment = next();
    r.L = static_cast<std::uint32_t>(std::stoul(next()));
    r.p = std::stod(next());
    r.q_n = std::stod(next());
    r.q_e = std::stod(next());
    r.observable = next();
    r.mean = std::stod(next());
    r.stderr_ = std::stod(next());
    r.n_samples = std::stoull(next());
    r.wall_seconds = std::stod(next());
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace miptqe
