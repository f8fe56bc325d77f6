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

#include "miptqe/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include <json.hpp>

#include "miptqe/collapse.hpp"
#include "miptqe/rng.hpp"
#include "miptqe/version.hpp"

namespace miptqe {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string grid_key(const ResultRow& r) {
  return std::to_string(r.L) + '|' + format_double(r.p) + '|' + format_double(r.q_n) + '|' +
         format_double(r.q_e);
}

std::string grid_key(const GridPoint& g) {
  return std::to_string(g.L) + '|' + format_double(g.p) + '|' + format_double(g.q_n) + '|' +
         format_double(g.q_e);
}

ExperimentOutput run_collapse(const ExperimentConfig& config) {
  if (config.collapse_input.empty()) {
    throw ConfigError("config error, key 'input': collapse needs an input CSV");
  }
  const auto rows = read_results_csv(config.collapse_input);
  std::vector<ScanPoint> points;
  for (const auto& r : rows) {
    if (r.observable != config.collapse_observable) continue;
    if (config.collapse_q >= 0 &&
        std::abs((r.q_n + r.q_e) - config.collapse_q) > 1e-12) {
      continue;
    }
    points.push_back({r.p, static_cast<double>(r.L), r.mean, r.stderr_, r.n_samples});
  }
  CollapseOptions opt;
  opt.poly_order = config.poly_order;
  opt.threshold = config.threshold;
  opt.weighted = config.weighted;
  const CollapseResult fit = fit_collapse(points, opt);
  json out{
      {"p_c", fit.p_c},         {"nu", fit.nu},        {"eps_min", fit.eps_min},
      {"p_c_lo", fit.p_c_lo},   {"p_c_hi", fit.p_c_hi}, {"nu_lo", fit.nu_lo},
      {"nu_hi", fit.nu_hi},     {"points", points.size()},
      {"observable", config.collapse_observable},
  };
  ExperimentOutput result;
  result.extra_json = out.dump(2);
  fs::create_directories(config.output);
  std::ofstream(fs::path(config.output) / "collapse.json") << result.extra_json << "\n";
  return result;
}

ExperimentOutput run_replica_verify(const ExperimentConfig& config) {
  json reports = json::array();
  for (int q : config.replica_q) {
    // The distinguished cyclic element: the Q = nk+1 block form
    // degenerates to the identity at Q = 2, where the meaningful slice is
    // the transposition, so C is a full cycle on the first Q-1 replicas.
    const ReplicaParams params =
        ReplicaParams::with_cyclic(Permutation::block_cyclic(q - 1, 1), config.replica_d);
    const SymmetryReport rep = symmetry_check(params, config.replica_kind, config.replica_p,
                                              config.replica_qn, config.replica_qe);
    json entries = json::array();
    for (const auto& e : rep.entries) {
      entries.push_back({{"family", e.family},
                         {"generator", e.generator},
                         {"max_violation", e.max_violation},
                         {"pass", e.pass}});
    }
    reports.push_back({{"Q", q},
                       {"d", config.replica_d},
                       {"p", config.replica_p},
                       {"q_n", config.replica_qn},
                       {"q_e", config.replica_qe},
                       {"entries", entries}});
  }
  ExperimentOutput result;
  result.extra_json = reports.dump(2);
  fs::create_directories(config.output);
  std::ofstream(fs::path(config.output) / "replica.json") << result.extra_json << "\n";
  return result;
}

}  // namespace

std::vector<GridPoint> build_grid(const ExperimentConfig& config) {
  std::vector<GridPoint> grid;
  const bool per_channel_rates = config.channels.size() > 1;
  const bool sweep_ratio = config.experiment == ExperimentKind::noise_estimate ||
                           config.experiment == ExperimentKind::unequal_rates;
  const std::vector<double> q_axis = per_channel_rates ? std::vector<double>{0.0}
                                                       : config.q_values;
  const std::vector<double> ratio_axis =
      sweep_ratio ? config.ratios : std::vector<double>{config.ratios.front()};

  std::uint64_t index = 0;
  for (auto L : config.sizes) {
    for (double p : config.p_values) {
      for (double q : q_axis) {
        for (double ratio : ratio_axis) {
          GridPoint g;
          g.L = L;
          g.p = p;
          g.grid_index = index++;
          g.spec.geometry = {config.geometry, L};
          g.spec.p = p;
          g.spec.initial = config.initial;
          g.spec.master_seed = derive_seed(config.seed, g.grid_index);
          for (std::size_t c = 0; c < config.channels.size(); ++c) {
            const double rate = per_channel_rates ? config.q_values[c] : q;
            ChannelRates ch;
            ch.tag = config.channels[c];
            ch.q_noise = ratio * rate;
            ch.q_qe = (1.0 - ratio) * rate;
            g.q_n += ch.q_noise;
            g.q_e += ch.q_qe;
            g.spec.channels.push_back(ch);
          }
          if (config.experiment == ExperimentKind::purification) {
            if (config.initial != InitialState::maximally_mixed) {
              throw ConfigError(
                  "config error, key 'initial': purification requires maximally_mixed");
            }
            g.spec.depth_steps = config.depth ? config.depth : L;
            if (g.spec.depth_steps < L) {
              throw ConfigError("config error, key 'depth': purification records t = L");
            }
            g.spec.cadence = ObserveCadence::every_step;
            g.at_step = L;
          } else {
            g.spec.depth_steps = config.depth;  // 0 = 10 L default
            g.spec.cadence = config.cadence;
            g.at_step = 0;
          }
          grid.push_back(std::move(g));
        }
      }
    }
  }
  return grid;
}

NoiseRateEstimate estimate_noise_rate(std::span<const ResultRow> rows) {
  // curves[L][p] = sorted (ratio, mean)
  std::map<std::uint32_t, std::map<double, std::vector<std::pair<double, double>>>> curves;
  for (const auto& r : rows) {
    if (r.observable != "cee_half") continue;
    const double q_tot = r.q_n + r.q_e;
    if (q_tot <= 0) continue;
    curves[r.L][r.p].emplace_back(r.q_n / q_tot, r.mean);
  }
  if (curves.empty()) throw std::invalid_argument("no cee_half rows to estimate from");

  NoiseRateEstimate est;
  for (auto& [L, by_p] : curves) {
    if (by_p.size() < 2) throw std::invalid_argument("need at least 2 distinct p values");
    double r_lo = 1.0, r_hi = 0.0;
    std::vector<Eigen::Vector3d> fits;
    std::vector<double> p_of;
    for (auto& [p, pts] : by_p) {
      if (pts.size() < 4) throw std::invalid_argument("need at least 4 ratio points per curve");
      std::sort(pts.begin(), pts.end());
      Eigen::MatrixXd a(pts.size(), 3);
      Eigen::VectorXd y(pts.size());
      for (std::size_t i = 0; i < pts.size(); ++i) {
        a(i, 0) = 1.0;
        a(i, 1) = pts[i].first;
        a(i, 2) = pts[i].first * pts[i].first;
        y(i) = pts[i].second;
        r_lo = std::min(r_lo, pts[i].first);
        r_hi = std::max(r_hi, pts[i].first);
      }
      fits.push_back(a.colPivHouseholderQr().solve(y));
      p_of.push_back(p);
    }
    std::vector<double> roots;
    for (std::size_t i = 0; i < fits.size(); ++i) {
      for (std::size_t j = i + 1; j < fits.size(); ++j) {
        const Eigen::Vector3d d = fits[i] - fits[j];
        const double scale = fits[i].cwiseAbs().maxCoeff() + fits[j].cwiseAbs().maxCoeff();
        if (d.cwiseAbs().maxCoeff() <= 1e-10 * std::max(scale, 1.0)) {
          throw std::runtime_error("degenerate intersection: curves for p=" +
                                   std::to_string(p_of[i]) + " and p=" +
                                   std::to_string(p_of[j]) + " coincide");
        }
        std::vector<double> candidates;
        if (std::abs(d[2]) < 1e-14 * std::max(scale, 1.0)) {
          if (std::abs(d[1]) > 0) candidates.push_back(-d[0] / d[1]);
        } else {
          const double disc = d[1] * d[1] - 4 * d[2] * d[0];
          if (disc >= 0) {
            const double s = std::sqrt(disc);
            candidates.push_back((-d[1] + s) / (2 * d[2]));
            candidates.push_back((-d[1] - s) / (2 * d[2]));
          }
        }
        double best = NAN;
        for (double c : candidates) {
          if (c >= r_lo - 1e-9 && c <= r_hi + 1e-9 &&
              (std::isnan(best) || std::abs(c - 0.5) < std::abs(best - 0.5))) {
            best = c;
          }
        }
        if (std::isnan(best)) {
          throw std::runtime_error(
              "no curve intersection inside the scanned ratio range [" +
              std::to_string(r_lo) + ", " + std::to_string(r_hi) + "] for p pair (" +
              std::to_string(p_of[i]) + ", " + std::to_string(p_of[j]) + ")");
        }
        roots.push_back(best);
      }
    }
    NoiseRateEstimate::PerSize out;
    out.L = L;
    out.ratio = 0.0;
    for (double r : roots) out.ratio += r;
    out.ratio /= static_cast<double>(roots.size());
    out.lo = *std::min_element(roots.begin(), roots.end());
    out.hi = *std::max_element(roots.begin(), roots.end());
    est.per_size.push_back(out);
  }
  return est;
}

std::string noise_estimate_json(const NoiseRateEstimate& est) {
  json per_size = json::array();
  for (const auto& e : est.per_size) {
    per_size.push_back({{"L", e.L}, {"ratio", e.ratio}, {"lo", e.lo}, {"hi", e.hi}});
  }
  return json{{"per_size", per_size}}.dump(2);
}

ExperimentOutput run_experiment(const ExperimentConfig& config) {
  config.validate();
  if (config.experiment == ExperimentKind::collapse) return run_collapse(config);
  if (config.experiment == ExperimentKind::replica_verify) return run_replica_verify(config);

  const auto grid = build_grid(config);
  std::vector<ObservableKind> observables;
  switch (config.experiment) {
    case ExperimentKind::scan:
      observables = {ObservableKind::i3, ObservableKind::cee_half};
      break;
    case ExperimentKind::purification:
      observables = {ObservableKind::cee_full};
      break;
    case ExperimentKind::noise_estimate:
      observables = {ObservableKind::cee_half};
      break;
    case ExperimentKind::unequal_rates:
      observables = {ObservableKind::i3};
      break;
    default:
      break;
  }

  fs::create_directories(config.output);
  const fs::path out_dir(config.output);
  const std::string config_text = serialize_config(config);
  const std::uint64_t config_hash = fnv1a(config_text);

  json manifest{
      {"config", config_text},
      {"seed", config.seed},
      {"version", kVersion},
      {"config_hash", config_hash},
      {"started", timestamp_utc()},
      {"grid_points", grid.size()},
      {"realizations", config.realizations},
      {"stderr_convention", "standard error of the mean"},
  };
  std::ofstream(out_dir / "manifest.json") << manifest.dump(2) << "\n";

  // Resume: collect already-complete grid points from the partial file.
  std::map<std::string, std::vector<ResultRow>> completed;
  const fs::path partial_path = out_dir / "partial.csv";
  const fs::path marker_path = out_dir / "partial.hash";
  if (fs::exists(partial_path) && fs::exists(marker_path)) {
    std::ifstream marker(marker_path);
    std::uint64_t old_hash = 0;
    marker >> old_hash;
    if (old_hash == config_hash) {
      for (auto& row : read_results_csv(partial_path.string())) {
        completed[grid_key(row)].push_back(std::move(row));
      }
    }
  }
  for (auto it = completed.begin(); it != completed.end();) {
    it = it->second.size() != observables.size() ? completed.erase(it) : std::next(it);
  }

  std::vector<GridPoint> pending;
  for (const auto& g : grid) {
    if (!completed.count(grid_key(g))) pending.push_back(g);
  }

  std::ofstream(marker_path) << config_hash << "\n";
  std::ofstream partial;
  const bool fresh_partial = completed.empty();
  partial.open(partial_path, fresh_partial ? std::ios::trunc : std::ios::app);
  if (fresh_partial) partial << kResultCsvHeader << "\n";

  EnsembleOptions opt;
  opt.realizations = config.realizations;
  opt.threads = config.threads;
  opt.mode = SimMode::production;
  const auto flush_rows = [&](std::span<const ResultRow> rows) {
    partial << format_rows_csv(rows, false);
    partial.flush();
  };
  const auto fresh_rows = run_ensemble(std::string(experiment_name(config.experiment)),
                                       pending, observables, opt, flush_rows);

  for (const auto& row : fresh_rows) completed[grid_key(row)].push_back(row);

  ExperimentOutput result;
  for (const auto& g : grid) {
    const auto it = completed.find(grid_key(g));
    if (it == completed.end()) continue;
    result.rows.insert(result.rows.end(), it->second.begin(), it->second.end());
  }
  write_results_csv(result.rows, (out_dir / "results.csv").string());

  if (config.experiment == ExperimentKind::noise_estimate) {
    result.extra_json = noise_estimate_json(estimate_noise_rate(result.rows));
    std::ofstream(out_dir / "noise_estimate.json") << result.extra_json << "\n";
  }

  manifest["finished"] = timestamp_utc();
  std::ofstream(out_dir / "manifest.json") << manifest.dump(2) << "\n";
  return result;
}

}  // namespace miptqe
