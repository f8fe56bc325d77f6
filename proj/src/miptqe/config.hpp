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

#ifndef MIPTQE_CONFIG_HPP_
#define MIPTQE_CONFIG_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "miptqe/circuit.hpp"
#include "miptqe/replica.hpp"

namespace miptqe {

enum class ExperimentKind {
  scan,
  collapse,
  purification,
  noise_estimate,
  unequal_rates,
  replica_verify,
};

std::string_view experiment_name(ExperimentKind kind);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parsed form of the key = value experiment document. See docs in the
// README for the grammar: [section] headers, scalar and comma-separated
// list values, '#' comments.
struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::scan;
  std::uint64_t seed = 0;
  std::uint32_t realizations = 2000;
  std::uint32_t threads = 0;  // 0 = auto
  std::string output = "runs/out";

  // [circuit]
  GeometryKind geometry = GeometryKind::square;
  std::vector<ChannelTag> channels{ChannelTag::dephasing};
  InitialState initial = InitialState::pure_zero;
  std::uint32_t depth = 0;  // 0 = auto (10*L, or L for purification)
  ObserveCadence cadence = ObserveCadence::final_step;

  // [sweep]
  std::vector<std::uint32_t> sizes{8};
  std::vector<double> p_values{0.2};
  std::vector<double> q_values{0.1};
  std::vector<double> ratios{0.5};  // q_n / q

  // [collapse]
  std::string collapse_input;
  std::string collapse_observable = "i3";
  double collapse_q = -1.0;  // filter; negative = no filter
  int poly_order = 12;
  double threshold = 1.01;
  bool weighted = false;

  // [replica]
  std::vector<int> replica_q{2, 3};
  int replica_d = 2;
  BondKind replica_kind = BondKind::reset;
  double replica_p = 0.3;
  double replica_qn = 0.05;
  double replica_qe = 0.05;

  bool operator==(const ExperimentConfig&) const = default;

  void validate() const;  // throws ConfigError naming the offending key
};

ExperimentConfig parse_config(std::string_view text);
std::string serialize_config(const ExperimentConfig& config);

}  // namespace miptqe

#endif  // MIPTQE_CONFIG_HPP_
