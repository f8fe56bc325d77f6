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

#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>

#include "miptqe/experiments.hpp"

using namespace miptqe;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("miptqe_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("fully measured scan yields exactly zero I3") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::scan;
  config.seed = 5;
  config.realizations = 100;
  config.threads = 2;
  config.output = fresh_dir("scan_zero").string();
  config.geometry = GeometryKind::chain;
  config.sizes = {8};
  config.p_values = {1.0};
  config.q_values = {0.0};
  config.depth = 4;

  const auto out = run_experiment(config);
  REQUIRE(out.rows.size() == 2);
  CHECK(out.rows[0].observable == "i3");
  CHECK(out.rows[0].mean == 0.0);
  CHECK(out.rows[0].stderr_ == 0.0);
  CHECK(out.rows[0].n_samples == 100);
  CHECK(fs::exists(fs::path(config.output) / "results.csv"));
  CHECK(fs::exists(fs::path(config.output) / "manifest.json"));
}

TEST_CASE("reruns skip completed grid points") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::scan;
  config.seed = 11;
  config.realizations = 30;
  config.threads = 2;
  config.output = fresh_dir("scan_resume").string();
  config.geometry = GeometryKind::chain;
  config.sizes = {4, 8};
  config.p_values = {0.2, 0.4};
  config.q_values = {0.1};
  config.depth = 4;

  const auto first = run_experiment(config);
  const auto t0 = std::chrono::steady_clock::now();
  const auto second = run_experiment(config);
  const double resumed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(first.rows.size() == second.rows.size());
  for (std::size_t i = 0; i < first.rows.size(); ++i) {
    CHECK(first.rows[i].mean == second.rows[i].mean);
    CHECK(first.rows[i].stderr_ == second.rows[i].stderr_);
    // Resumed rows keep the original timing (not recomputed).
    CHECK(first.rows[i].wall_seconds == second.rows[i].wall_seconds);
  }
  CHECK(resumed_seconds < 5.0);

  SUBCASE("changing the seed invalidates the marker") {
    config.seed = 12;
    const auto third = run_experiment(config);
    REQUIRE(third.rows.size() == first.rows.size());
    bool any_different = false;
    for (std::size_t i = 0; i < first.rows.size(); ++i) {
      any_different |= third.rows[i].mean != first.rows[i].mean;
    }
    CHECK(any_different);
  }
}

TEST_CASE("noise estimate on a constructed fixture") {
  // Synthetic quadratic curves intersecting exactly at ratio 0.5.
  std::vector<ResultRow> rows;
  for (const double p : {0.6, 0.7, 0.8}) {
    for (const double r : {0.2, 0.35, 0.5, 0.65, 0.8}) {
      ResultRow row;
      row.experiment = "noise_estimate";
      row.L = 12;
      row.p = p;
      row.q_n = 0.2 * r;
      row.q_e = 0.2 * (1 - r);
      row.observable = "cee_half";
      row.mean = 1.0 + (p - 0.6) * (r - 0.5) * 3.0 + 0.2 * (r - 0.5) * (r - 0.5);
      row.stderr_ = 0.01;
      row.n_samples = 100;
      rows.push_back(row);
    }
  }
  const auto est = estimate_noise_rate(rows);
  REQUIRE(est.per_size.size() == 1);
  CHECK(est.per_size[0].L == 12);
  CHECK(est.per_size[0].ratio == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(est.per_size[0].hi - est.per_size[0].lo < 1e-6);

  SUBCASE("coinciding curves raise the degenerate diagnostic") {
    for (auto& row : rows) row.mean = 1.0 + 0.2 * (row.q_n / 0.2 - 0.5);
    CHECK_THROWS_WITH_AS(estimate_noise_rate(rows),
                         doctest::Contains("degenerate intersection"), std::runtime_error);
  }

  SUBCASE("non-intersecting curves raise a diagnostic") {
    for (auto& row : rows) {
      const double r = row.q_n / 0.2;
      row.mean = row.p + 0.001 * r;  // parallel lines, no crossing in range
    }
    CHECK_THROWS_WITH_AS(estimate_noise_rate(rows), doctest::Contains("no curve intersection"),
                         std::runtime_error);
  }
}

TEST_CASE("replica verify experiment emits the report") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::replica_verify;
  config.output = fresh_dir("replica").string();
  config.replica_q = {2, 3};
  config.replica_qn = 0.05;
  config.replica_qe = 0.05;
  const auto out = run_experiment(config);
  CHECK(out.rows.empty());
  CHECK(out.extra_json.find("field_swap") != std::string::npos);
  CHECK(fs::exists(fs::path(config.output) / "replica.json"));
}

TEST_CASE("purification experiment records t = L") {
  ExperimentConfig config;
  config.experiment = ExperimentKind::purification;
  config.seed = 3;
  config.realizations = 50;
  config.threads = 2;
  config.output = fresh_dir("purify").string();
  config.geometry = GeometryKind::chain;
  config.initial = InitialState::maximally_mixed;
  config.sizes = {8};
  config.p_values = {1.0};
  config.q_values = {0.0};

  const auto out = run_experiment(config);
  REQUIRE(out.rows.size() == 1);
  CHECK(out.rows[0].observable == "cee_full");
  CHECK(out.rows[0].mean == 0.0);  // instant purification at p = 1
}

TEST_CASE("throughput gate: one L = 12 trajectory under a second") {
  CircuitSpec spec;
  spec.geometry = {GeometryKind::square, 12};
  spec.p = 0.2;
  spec.channels.push_back({ChannelTag::dephasing, 0.05, 0.05});
  spec.depth_steps = 120;
  spec.cadence = ObserveCadence::final_step;
  spec.master_seed = 1;
  const ObservableKind obs[2] = {ObservableKind::i3, ObservableKind::cee_half};
  const auto t0 = std::chrono::steady_clock::now();
  run_trajectory(spec, obs, 0);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(seconds < 1.0);
}
