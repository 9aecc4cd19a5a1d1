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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wclt/ensembles.hpp"

namespace wclt {

/// Bad command line, config file, or experiment configuration.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class EnsembleId {
  kGueTridiag,
  kGoeTridiag,
  kGueDense,
  kGoeDense,
  kWignerThreePoint,
  kWignerRademacher,
};

[[nodiscard]] std::string_view to_string(EnsembleId id) noexcept;
/// Throws UsageError for an unknown name.
[[nodiscard]] EnsembleId parse_ensemble(std::string_view name);
[[nodiscard]] int beta_of(EnsembleId id) noexcept;
[[nodiscard]] bool is_dense(EnsembleId id) noexcept;
/// Entry law of a dense ensemble at order n. Throws UsageError for the
/// tridiagonal models, which have no entry law.
[[nodiscard]] EnsembleSpec dense_spec(EnsembleId id, std::size_t n);

inline constexpr std::size_t kDenseMaxN = 2048;
inline constexpr std::size_t kRigidityMaxReplicates = 1000;
inline constexpr std::size_t kInterlaceMaxN = 1024;
inline constexpr std::size_t kInterlaceMinReplicates = 2000;
inline constexpr std::size_t kCltMinReplicates = 5000;

/// Pass/fail thresholds. These are harness constants, recorded in every
/// report next to the value they judge.
struct Tolerances {
  double slope_rel = 0.12;        // |slope / target - 1|
  double r2_min = 0.95;
  double slope_ratio_rel = 0.15;  // |slope(beta=1) / slope(beta=2) / 2 - 1|
  double ks_d_clt = 0.02;
  double skew_max = 0.1;
  double counting_mean_se = 4.0;
  double universality_mean_se = 3.0;
  double variance_ratio_rel = 0.15;
  double std_rel = 0.15;
  double ks_d_fluctuation = 0.02;
  double rigidity_fraction = 0.99;
  double ks_alpha = 0.01;
};

struct ExperimentConfig {
  EnsembleId ensemble = EnsembleId::kGueTridiag;
  /// Reference ensemble for universality comparisons.
  EnsembleId reference = EnsembleId::kGueDense;
  std::vector<std::size_t> n_list{1024};
  double y = 0.0;
  std::size_t replicates = 1000;
  std::uint64_t seed = 1;
  /// Worker count. Execution detail only: never part of a report.
  unsigned threads = 1;
  /// 1-based eigenvalue index for fluctuation runs; n/2 when unset.
  std::optional<std::size_t> index;
  double epsilon = 0.1;
  double rigidity_c = 1.0;
  Tolerances tol;

  /// Checks the invariants common to all experiments; throws UsageError.
  void validate() const;
};

/// Applies one `key=value` setting. Keys match the long CLI flags without the
/// leading dashes (`ensemble`, `n`, `y`, `reps`, `seed`, `threads`, `index`,
/// `epsilon`, `rigidity-c`, `reference`) plus `tol.<name>` for thresholds.
/// `n` accepts a comma-separated list; repeated `n` lines append.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Parses a config file body: one `key=value` per line, `#` starts a comment.
/// Throws UsageError with the offending line number.
[[nodiscard]] ExperimentConfig parse_config_text(std::string_view text, ExperimentConfig base = {});

}  // namespace wclt
