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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wclt/harness/config.hpp"
#include "wclt/stats.hpp"

namespace wclt {

/// One thresholded check. `passed` is always recomputable from value,
/// comparator and threshold.
struct Verdict {
  enum class Op { kAtMost, kAtLeast };

  std::string name;
  double value = 0.0;
  Op op = Op::kAtMost;
  double threshold = 0.0;
  bool passed = false;

  static Verdict at_most(std::string name, double value, double threshold);
  static Verdict at_least(std::string name, double value, double threshold);
  [[nodiscard]] bool recompute() const noexcept;
};

/// Results for one matrix order.
struct SizeResult {
  std::size_t n = 0;
  std::string ensemble;
  int beta = 2;
  /// "count" for Y_n, "eigenvalue" for a normalized lambda_i.
  std::string statistic = "count";
  StreamingMoments moments;
  bool variance_defined = false;
  double theory_mean = 0.0;
  double theory_var = 0.0;
  std::optional<KsResult> ks;
};

struct ExperimentReport {
  std::string experiment;
  ExperimentConfig config;
  std::vector<SizeResult> sizes;
  /// Standardized statistics behind the report's headline KS test.
  std::vector<double> z_scores;
  std::optional<LinearFit> fit;
  std::optional<double> slope_target;
  std::map<std::string, double> metrics;
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  double wall_seconds = 0.0;

  /// True when every verdict passes (vacuously for contrast runs).
  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] const Verdict* verdict(std::string_view name) const noexcept;
};

/// Timings are the only nondeterministic field, so they are omitted unless
/// requested; everything else is a function of the configuration and seed.
[[nodiscard]] nlohmann::json to_json(const ExperimentReport& report, bool include_timings = false);
[[nodiscard]] ExperimentReport report_from_json(const nlohmann::json& j);

[[nodiscard]] nlohmann::json to_json(const ExperimentConfig& config);
[[nodiscard]] ExperimentConfig config_from_json(const nlohmann::json& j);

/// CSV schema v1: a header row, then one row per matrix order.
[[nodiscard]] std::string csv_header();
[[nodiscard]] std::string to_csv(const ExperimentReport& report);

}  // namespace wclt
