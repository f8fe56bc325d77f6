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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <filesystem>

#include "miptqe/ensemble.hpp"
#include "miptqe/rng.hpp"

using namespace miptqe;

namespace {

std::vector<GridPoint> small_grid(std::uint64_t seed) {
  std::vector<GridPoint> grid;
  std::uint64_t index = 0;
  for (const double p : {0.1, 0.3}) {
    GridPoint g;
    g.L = 4;
    g.p = p;
    g.q_n = 0.05;
    g.q_e = 0.05;
    g.grid_index = index++;
    g.spec.geometry = {GeometryKind::chain, 4};
    g.spec.p = p;
    g.spec.channels.push_back({ChannelTag::dephasing, 0.05, 0.05});
    g.spec.depth_steps = 6;
    g.spec.cadence = ObserveCadence::final_step;
    g.spec.master_seed = derive_seed(seed, g.grid_index);
    grid.push_back(g);
  }
  return grid;
}

std::string strip_wall_column(const std::string& csv) {
  std::string out;
  for (std::size_t pos = 0; pos < csv.size();) {
    const std::size_t eol = csv.find('\n', pos);
    const std::string line = csv.substr(pos, eol - pos);
    const std::size_t comma = line.rfind(',');
    out += line.substr(0, comma);
    out += '\n';
    pos = eol + 1;
  }
  return out;
}

}  // namespace

TEST_CASE("aggregation matches a serial reference exactly") {
  const auto grid = small_grid(42);
  const ObservableKind obs[2] = {ObservableKind::i3, ObservableKind::cee_half};

  EnsembleOptions serial;
  serial.realizations = 40;
  serial.threads = 1;
  EnsembleOptions parallel = serial;
  parallel.threads = 4;

  const auto rows1 = run_ensemble("scan", grid, obs, serial);
  const auto rows2 = run_ensemble("scan", grid, obs, parallel);
  REQUIRE(rows1.size() == rows2.size());
  for (std::size_t i = 0; i < rows1.size(); ++i) {
    CHECK(rows1[i].mean == rows2[i].mean);
    CHECK(rows1[i].stderr_ == rows2[i].stderr_);
    CHECK(rows1[i].n_samples == rows2[i].n_samples);
  }

  // Reference aggregation from individual trajectories.
  std::vector<double> vals;
  for (std::uint32_t t = 0; t < 40; ++t) {
    vals.push_back(run_trajectory(grid[0].spec, obs, t).values[0].back());
  }
  double sum = 0, sumsq = 0;
  for (const double v : vals) {
    sum += v;
    sumsq += v * v;
  }
  const double mean = sum / 40;
  const double sem = std::sqrt(std::max(0.0, (sumsq - 40 * mean * mean) / 39) / 40);
  CHECK(rows1[0].mean == mean);
  CHECK(rows1[0].stderr_ == sem);
}

TEST_CASE("csv output is byte-identical apart from wall seconds") {
  const auto grid = small_grid(7);
  const ObservableKind obs[1] = {ObservableKind::cee_half};
  EnsembleOptions a;
  a.realizations = 10;
  a.threads = 1;
  EnsembleOptions b = a;
  b.threads = 3;
  const auto csv1 = format_rows_csv(run_ensemble("scan", grid, obs, a), true);
  const auto csv2 = format_rows_csv(run_ensemble("scan", grid, obs, b), true);
  CHECK(strip_wall_column(csv1) == strip_wall_column(csv2));
  CHECK(csv1.substr(0, csv1.find('\n')) == kResultCsvHeader);
}

TEST_CASE("csv writing round-trips") {
  std::vector<ResultRow> rows;
  ResultRow r;
  r.experiment = "scan";
  r.L = 12;
  r.p = 0.1;
  r.q_n = 0.05;
  r.q_e = 0.05;
  r.observable = "i3";
  r.mean = -0.625;
  r.stderr_ = 0.0125;
  r.n_samples = 2000;
  r.wall_seconds = 1.5;
  rows.push_back(r);

  const auto dir = std::filesystem::temp_directory_path() / "miptqe_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "results.csv").string();
  write_results_csv(rows, path);
  const auto back = read_results_csv(path);
  REQUIRE(back.size() == 1);
  CHECK(back[0].experiment == "scan");
  CHECK(back[0].L == 12);
  CHECK(back[0].p == 0.1);
  CHECK(back[0].mean == -0.625);
  CHECK(back[0].stderr_ == 0.0125);
  CHECK(back[0].n_samples == 2000);

  SUBCASE("empty row list yields a header-only file") {
    const auto empty_path = (dir / "empty.csv").string();
    write_results_csv({}, empty_path);
    std::ifstream in(empty_path);
    std::string line;
    std::getline(in, line);
    CHECK(line == kResultCsvHeader);
    CHECK(!std::getline(in, line));
  }
}
