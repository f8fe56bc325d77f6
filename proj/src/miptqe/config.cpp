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

#include "miptqe/config.hpp"

#include <charconv>
#include <map>
#include <sstream>

namespace miptqe {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void fail(const std::string& key, int line, const std::string& what) {
  throw ConfigError("config error at line " + std::to_string(line) + ", key '" + key +
                    "': " + what);
}

struct RawValue {
  std::string text;
  int line = 0;
  bool used = false;
};

class KeyTable {
 public:
  void insert(const std::string& key, std::string value, int line) {
    if (values_.count(key)) fail(key, line, "duplicate key");
    values_[key] = RawValue{std::move(value), line, false};
  }

  bool has(const std::string& key) const { return values_.count(key) != 0; }

  const RawValue* get(const std::string& key) {
    auto it = values_.find(key);
    if (it == values_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  void check_all_used() const {
    for (const auto& [key, value] : values_) {
      if (!value.used) fail(key, value.line, "unknown key");
    }
  }

 private:
  std::map<std::string, RawValue> values_;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  if (out.empty()) out.push_back("");
  return out;
}

double parse_double(const std::string& s, const std::string& key, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) fail(key, line, "expected a number, got '" + s + "'");
    return v;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(key, line, "expected a number, got '" + s + "'");
  }
}

std::uint64_t parse_u64(const std::string& s, const std::string& key, int line) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) {
    fail(key, line, "expected a non-negative integer, got '" + s + "'");
  }
  return v;
}

}  // namespace

std::string_view experiment_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::scan: return "scan";
    case ExperimentKind::collapse: return "collapse";
    case ExperimentKind::purification: return "purification";
    case ExperimentKind::noise_estimate: return "noise_estimate";
    case ExperimentKind::unequal_rates: return "unequal_rates";
    case ExperimentKind::replica_verify: return "replica_verify";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  const auto bad = [](const std::string& key, const std::string& what) {
    throw ConfigError("config error, key '" + key + "': " + what);
  };
  if (realizations < 1) bad("realizations", "must be at least 1");
  for (double p : p_values) {
    if (p < 0.0 || p > 1.0) bad("p", "probability out of range");
  }
  for (double q : q_values) {
    if (q < 0.0 || q > 1.0) bad("q", "probability out of range");
  }
  for (double r : ratios) {
    if (r < 0.0 || r > 1.0) bad("ratio", "must lie in [0, 1]");
  }
  if (sizes.empty()) bad("L", "sweep list must not be empty");
  if (p_values.empty()) bad("p", "sweep list must not be empty");
  if (q_values.empty()) bad("q", "sweep list must not be empty");
  if (channels.empty()) bad("channel", "need at least one channel kind");
  if (channels.size() > 1 && q_values.size() != channels.size()) {
    bad("q", "with multiple channels, q must list one rate per channel");
  }
  for (auto L : sizes) {
    if (L < 2 || L % 2 != 0) bad("L", "sizes must be even and at least 2");
  }
  if (poly_order < 1) bad("poly_order", "must be positive");
  if (threshold < 1.0) bad("threshold", "must be at least 1");
  if (replica_d < 2) bad("d", "local dimension must be at least 2");
  for (int q : replica_q) {
    if (q < 2 || q > 5) bad("Q", "replica count must be in [2, 5]");
  }
  if (replica_p < 0 || replica_p > 1 || replica_qn < 0 || replica_qn > 1 ||
      replica_qe < 0 || replica_qe > 1) {
    bad("replica rates", "probability out of range");
  }
}

ExperimentConfig parse_config(std::string_view text) {
  KeyTable table;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string line(text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                    : eol - pos));
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    if (stripped.front() == '[') {
      if (stripped.back() != ']') fail(stripped, line_no, "malformed section header");
      section = trim(stripped.substr(1, stripped.size() - 2));
      continue;
    }
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos) fail(stripped, line_no, "expected key = value");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) fail(stripped, line_no, "empty key");
    table.insert(section.empty() ? key : section + "." + key, value, line_no);
  }

  ExperimentConfig config;

  const auto scalar = [&](const char* key) { return table.get(key); };
  const auto enum_of = [&](const RawValue* rv, const char* key, auto&& mapping, auto fallback) {
    for (const auto& [name, v] : mapping) {
      if (rv->text == name) return v;
    }
    fail(key, rv->line, "unknown value '" + rv->text + "'");
    return fallback;
  };

  if (const auto* rv = scalar("experiment")) {
    const std::pair<const char*, ExperimentKind> m[] = {
        {"scan", ExperimentKind::scan},
        {"collapse", ExperimentKind::collapse},
        {"purification", ExperimentKind::purification},
        {"noise_estimate", ExperimentKind::noise_estimate},
        {"unequal_rates", ExperimentKind::unequal_rates},
        {"replica_verify", ExperimentKind::replica_verify},
    };
    config.experiment = enum_of(rv, "experiment", m, ExperimentKind::scan);
  }
  if (const auto* rv = scalar("seed")) config.seed = parse_u64(rv->text, "seed", rv->line);
  if (const auto* rv = scalar("realizations")) {
    config.realizations = static_cast<std::uint32_t>(parse_u64(rv->text, "realizations", rv->line));
  }
  if (const auto* rv = scalar("threads")) {
    config.threads = rv->text == "auto"
                         ? 0
                         : static_cast<std::uint32_t>(parse_u64(rv->text, "threads", rv->line));
  }
  if (const auto* rv = scalar("output")) config.output = rv->text;

  if (const auto* rv = scalar("circuit.geometry")) {
    const std::pair<const char*, GeometryKind> m[] = {
        {"chain", GeometryKind::chain}, {"square", GeometryKind::square}};
    config.geometry = enum_of(rv, "geometry", m, GeometryKind::square);
  }
  if (const auto* rv = scalar("circuit.channel")) {
    config.channels.clear();
    const std::pair<const char*, ChannelTag> m[] = {
        {"dephasing", ChannelTag::dephasing},
        {"resetting", ChannelTag::resetting},
        {"depolarizing", ChannelTag::depolarizing}};
    for (const auto& item : split_list(rv->text)) {
      bool found = false;
      for (const auto& [name, v] : m) {
        if (item == name) {
          config.channels.push_back(v);
          found = true;
        }
      }
      if (!found) fail("channel", rv->line, "unknown value '" + item + "'");
    }
  }
  if (const auto* rv = scalar("circuit.initial")) {
    const std::pair<const char*, InitialState> m[] = {
        {"pure_zero", InitialState::pure_zero},
        {"maximally_mixed", InitialState::maximally_mixed}};
    config.initial = enum_of(rv, "initial", m, InitialState::pure_zero);
  }
  if (const auto* rv = scalar("circuit.depth")) {
    config.depth = rv->text == "auto"
                       ? 0
                       : static_cast<std::uint32_t>(parse_u64(rv->text, "depth", rv->line));
  }
  if (const auto* rv = scalar("circuit.observe")) {
    const std::pair<const char*, ObserveCadence> m[] = {
        {"final", ObserveCadence::final_step}, {"every_step", ObserveCadence::every_step}};
    config.cadence = enum_of(rv, "observe", m, ObserveCadence::final_step);
  }

  if (const auto* rv = scalar("sweep.L")) {
    config.sizes.clear();
    for (const auto& item : split_list(rv->text)) {
      config.sizes.push_back(static_cast<std::uint32_t>(parse_u64(item, "L", rv->line)));
    }
  }
  const auto double_list = [&](const char* key, std::vector<double>* out) {
    if (const auto* rv = scalar(key)) {
      out->clear();
      for (const auto& item : split_list(rv->text)) {
        out->push_back(parse_double(item, key, rv->line));
      }
    }
  };
  double_list("sweep.p", &config.p_values);
  double_list("sweep.q", &config.q_values);
  double_list("sweep.ratio", &config.ratios);

  if (const auto* rv = scalar("collapse.input")) config.collapse_input = rv->text;
  if (const auto* rv = scalar("collapse.observable")) config.collapse_observable = rv->text;
  if (const auto* rv = scalar("collapse.q")) {
    config.collapse_q = parse_double(rv->text, "collapse.q", rv->line);
  }
  if (const auto* rv = scalar("collapse.poly_order")) {
    config.poly_order = static_cast<int>(parse_u64(rv->text, "poly_order", rv->line));
  }
  if (const auto* rv = scalar("collapse.threshold")) {
    config.threshold = parse_double(rv->text, "threshold", rv->line);
  }
  if (const auto* rv = scalar("collapse.weighted")) {
    if (rv->text == "true") {
      config.weighted = true;
    } else if (rv->text == "false") {
      config.weighted = false;
    } else {
      fail("weighted", rv->line, "expected true or false");
    }
  }

  if (const auto* rv = scalar("replica.Q")) {
    config.replica_q.clear();
    for (const auto& item : split_list(rv->text)) {
      config.replica_q.push_back(static_cast<int>(parse_u64(item, "Q", rv->line)));
    }
  }
  if (const auto* rv = scalar("replica.d")) {
    config.replica_d = static_cast<int>(parse_u64(rv->text, "d", rv->line));
  }
  if (const auto* rv = scalar("replica.kind")) {
    const std::pair<const char*, BondKind> m[] = {
        {"reset", BondKind::reset},
        {"depolarizing", BondKind::depolarizing},
        {"dephasing_asymptotic", BondKind::dephasing_asymptotic}};
    config.replica_kind = enum_of(rv, "kind", m, BondKind::reset);
  }
  if (const auto* rv = scalar("replica.p")) {
    config.replica_p = parse_double(rv->text, "replica.p", rv->line);
  }
  if (const auto* rv = scalar("replica.q_n")) {
    config.replica_qn = parse_double(rv->text, "replica.q_n", rv->line);
  }
  if (const auto* rv = scalar("replica.q_e")) {
    config.replica_qe = parse_double(rv->text, "replica.q_e", rv->line);
  }

  table.check_all_used();
  config.validate();
  return config;
}

namespace {

std::string fmt_double(double v) {
  for (int prec = 6; prec <= 17; ++prec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::stod(buf) == v) return buf;
  }
  return "0";
}

template <class T, class Fmt>
std::string join(const std::vector<T>& values, Fmt&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream os;
  os << "experiment = " << experiment_name(c.experiment) << "\n";
  os << "seed = " << c.seed << "\n";
  os << "realizations = " << c.realizations << "\n";
  os << "threads = " << (c.threads == 0 ? std::string("auto") : std::to_string(c.threads)) << "\n";
  os << "output = " << c.output << "\n\n";

  os << "[circuit]\n";
  os << "geometry = " << (c.geometry == GeometryKind::chain ? "chain" : "square") << "\n";
  os << "channel = "
     << join(c.channels, [](ChannelTag t) { return std::string(channel_name(t)); }) << "\n";
  os << "initial = "
     << (c.initial == InitialState::pure_zero ? "pure_zero" : "maximally_mixed") << "\n";
  os << "depth = " << (c.depth == 0 ? std::string("auto") : std::to_string(c.depth)) << "\n";
  os << "observe = " << (c.cadence == ObserveCadence::final_step ? "final" : "every_step")
     << "\n\n";

  os << "[sweep]\n";
  os << "L = " << join(c.sizes, [](std::uint32_t v) { return std::to_string(v); }) << "\n";
  os << "p = " << join(c.p_values, fmt_double) << "\n";
  os << "q = " << join(c.q_values, fmt_double) << "\n";
  os << "ratio = " << join(c.ratios, fmt_double) << "\n\n";

  os << "[collapse]\n";
  if (!c.collapse_input.empty()) os << "input = " << c.collapse_input << "\n";
  os << "observable = " << c.collapse_observable << "\n";
  if (c.collapse_q >= 0) os << "q = " << fmt_double(c.collapse_q) << "\n";
  os << "poly_order = " << c.poly_order << "\n";
  os << "threshold = " << fmt_double(c.threshold) << "\n";
  os << "weighted = " << (c.weighted ? "true" : "false") << "\n\n";

  os << "[replica]\n";
  os << "Q = " << join(c.replica_q, [](int v) { return std::to_string(v); }) << "\n";
  os << "d = " << c.replica_d << "\n";
  os << "kind = "
     << (c.replica_kind == BondKind::reset
             ? "reset"
             : (c.replica_kind == BondKind::depolarizing ? "depolarizing"
                                                         : "dephasing_asymptotic"))
     << "\n";
  os << "p = " << fmt_double(c.replica_p) << "\n";
  os << "q_n = " << fmt_double(c.replica_qn) << "\n";
  os << "q_e = " << fmt_double(c.replica_qe) << "\n";
  return os.str();
}

}  // namespace miptqe
