// Copyright 2026 The wclt Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wclt/harness/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <utility>

namespace wclt {

namespace {

constexpr std::array<std::pair<EnsembleId, std::string_view>, 6> kEnsembleNames{{
    {EnsembleId::kGueTridiag, "gue-tridiag"},
    {EnsembleId::kGoeTridiag, "goe-tridiag"},
    {EnsembleId::kGueDense, "gue-dense"},
    {EnsembleId::kGoeDense, "goe-dense"},
    {EnsembleId::kWignerThreePoint, "wigner-threepoint"},
    {EnsembleId::kWignerRademacher, "wigner-rademacher"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw UsageError("invalid value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

std::vector<std::size_t> parse_n_list(std::string_view text) {
  std::vector<std::size_t> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_number<std::size_t>("n", text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

double& tolerance_field(Tolerances& tol, std::string_view name) {
  if (name == "slope-rel") return tol.slope_rel;
  if (name == "r2-min") return tol.r2_min;
  if (name == "slope-ratio-rel") return tol.slope_ratio_rel;
  if (name == "ks-d-clt") return tol.ks_d_clt;
  if (name == "skew-max") return tol.skew_max;
  if (name == "counting-mean-se") return tol.counting_mean_se;
  if (name == "universality-mean-se") return tol.universality_mean_se;
  if (name == "variance-ratio-rel") return tol.variance_ratio_rel;
  if (name == "std-rel") return tol.std_rel;
  if (name == "ks-d-fluctuation") return tol.ks_d_fluctuation;
  if (name == "rigidity-fraction") return tol.rigidity_fraction;
  if (name == "ks-alpha") return tol.ks_alpha;
  throw UsageError("unknown tolerance '" + std::string(name) + "'");
}

}  // namespace

std::string_view to_string(EnsembleId id) noexcept {
  for (const auto& [key, name] : kEnsembleNames) {
    if (key == id) return name;
  }
  return "unknown";
}

EnsembleId parse_ensemble(std::string_view name) {
  for (const auto& [key, text] : kEnsembleNames) {
    if (text == name) return key;
  }
  throw UsageError("unknown ensemble '" + std::string(name) + "'");
}

int beta_of(EnsembleId id) noexcept {
  return id == EnsembleId::kGoeTridiag || id == EnsembleId::kGoeDense ? 1 : 2;
}

bool is_dense(EnsembleId id) noexcept {
  return id != EnsembleId::kGueTridiag && id != EnsembleId::kGoeTridiag;
}

EnsembleSpec dense_spec(EnsembleId id, std::size_t n) {
  switch (id) {
    case EnsembleId::kGueDense: return EnsembleSpec::gue(n);
    case EnsembleId::kGoeDense: return EnsembleSpec::goe(n);
    case EnsembleId::kWignerThreePoint: return EnsembleSpec::gue_matched_three_point(n);
    case EnsembleId::kWignerRademacher: return EnsembleSpec::rademacher(n);
    default: break;
  }
  throw UsageError(std::string(to_string(id)) + " has no dense entry law");
}

void ExperimentConfig::validate() const {
  if (n_list.empty()) throw UsageError("at least one matrix order n is required");
  for (std::size_t n : n_list) {
    if (n < 2) throw UsageError("matrix order n must be >= 2");
    if (is_dense(ensemble) && n > kDenseMaxN) {
      throw UsageError("dense ensembles are capped at n <= " + std::to_string(kDenseMaxN));
    }
  }
  if (replicates < 1) throw UsageError("replicates must be >= 1");
  if (!(y > -2.0 && y < 2.0)) throw UsageError("y must lie strictly inside (-2, 2)");
  if (!(epsilon > 0.0 && epsilon < 0.5)) throw UsageError("epsilon must lie in (0, 0.5)");
  if (!(rigidity_c > 0.0)) throw UsageError("rigidity-c must be positive");
  if (threads < 1) throw UsageError("threads must be >= 1");
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  if (key == "ensemble") {
    config.ensemble = parse_ensemble(value);
  } else if (key == "reference") {
    config.reference = parse_ensemble(value);
  } else if (key == "n") {
    config.n_list = parse_n_list(value);
  } else if (key == "y") {
    config.y = parse_number<double>(key, value);
  } else if (key == "reps" || key == "replicates") {
    config.replicates = parse_number<std::size_t>(key, value);
  } else if (key == "seed") {
    config.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    config.threads = parse_number<unsigned>(key, value);
  } else if (key == "index") {
    config.index = parse_number<std::size_t>(key, value);
  } else if (key == "epsilon") {
    config.epsilon = parse_number<double>(key, value);
  } else if (key == "rigidity-c") {
    config.rigidity_c = parse_number<double>(key, value);
  } else if (key.starts_with("tol.")) {
    tolerance_field(config.tol, key.substr(4)) = parse_number<double>(key, value);
  } else {
    throw UsageError("unknown setting '" + std::string(key) + "'");
  }
}

ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base) {
  std::vector<std::size_t> n_values;
  int line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text.remove_prefix(eol == std::string_view::npos ? text.size() : eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    try {
      if (trim(line.substr(0, eq)) == "n") {
        const auto values = parse_n_list(trim(line.substr(eq + 1)));
        n_values.insert(n_values.end(), values.begin(), values.end());
      } else {
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
      }
    } catch (const UsageError& e) {
      throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!n_values.empty()) base.n_list = std::move(n_values);
  return base;
}

}  // namespace wclt
