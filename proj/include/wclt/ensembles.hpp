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

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "wclt/rng.hpp"
#include "wclt/spectral.hpp"

namespace wclt {

struct GaussianReal {
  double variance = 1.0;
};

/// +atom and -atom with probability atom_prob each, zero otherwise.
struct ThreePoint {
  double atom = 1.0;
  double atom_prob = 0.5;
};

/// +scale and -scale with probability 1/2 each.
struct Rademacher {
  double scale = 1.0;
};

/// A symmetric, bounded or Gaussian scalar law with analytic moments.
class EntryDistribution {
 public:
  using Kind = std::variant<GaussianReal, ThreePoint, Rademacher>;

  /// Throws std::invalid_argument for a non-positive variance or scale, or
  /// atom_prob outside (0, 1/2].
  explicit EntryDistribution(Kind kind);

  [[nodiscard]] const Kind& kind() const noexcept { return kind_; }

  /// Raw moment E[xi^k] for 1 <= k <= 6.
  [[nodiscard]] double moment(int k) const;
  [[nodiscard]] double variance() const noexcept { return moments_[1]; }

  double sample(Rng& rng) const noexcept;

  [[nodiscard]] std::string describe() const;

  static constexpr int kMaxMoment = 6;

 private:
  Kind kind_;
  std::array<double, kMaxMoment> moments_{};
};

/// Parameters of a Wigner ensemble. For beta = 2 the off-diagonal law is that
/// of the real and of the imaginary part separately.
struct EnsembleSpec {
  int beta = 2;
  EntryDistribution off_diag_part{GaussianReal{0.5}};
  EntryDistribution diag{GaussianReal{1.0}};
  std::size_t n = 1;

  /// Complex Hermitian Gaussian: parts of variance 1/2, diagonal variance 1.
  static EnsembleSpec gue(std::size_t n);
  /// Real symmetric Gaussian: off-diagonal variance 1, diagonal variance 2.
  static EnsembleSpec goe(std::size_t n);
  /// Complex Hermitian with three-point entries matching GUE to order 4.
  static EnsembleSpec gue_matched_three_point(std::size_t n);
  /// Complex Hermitian with +-1/sqrt(2) parts and +-1 diagonal.
  static EnsembleSpec rademacher(std::size_t n);
};

/// Samples the unnormalized matrix M_n; entries on and above the diagonal are
/// drawn row by row in a fixed order. Throws std::invalid_argument for n = 0.
[[nodiscard]] HermitianMatrix sample_dense(const EnsembleSpec& spec, Rng& rng);
[[nodiscard]] HermitianMatrix sample_dense(const EnsembleSpec& spec, const SeedStream& stream);

/// Unnormalized tridiagonal beta-Hermite model whose eigenvalues have the law
/// of GUE (beta = 2) or GOE (beta = 1) with the conventions of EnsembleSpec.
[[nodiscard]] TridiagonalMatrix sample_tridiagonal_beta(std::size_t n, int beta, Rng& rng);
[[nodiscard]] TridiagonalMatrix sample_tridiagonal_beta(std::size_t n, int beta,
                                                        const SeedStream& stream);

/// Three-point law with the first four moments of Gaussian(0, target_variance):
/// atoms +-sqrt(3 * target_variance) with probability 1/6 each.
[[nodiscard]] EntryDistribution gue_matched_three_point(double target_variance);

struct MomentComparison {
  int order = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equal = false;
};

/// E[Re^m Im^l] for independent, identically distributed parts.
struct MixedMoment {
  int re_power = 0;
  int im_power = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equal = false;
};

struct MatchReport {
  int order = 0;
  bool matched = false;
  /// First order at which the laws differ, 0 if none up to `order`.
  int first_mismatch = 0;
  std::vector<MomentComparison> moments;
  std::vector<MixedMoment> mixed;
};

/// Compares analytic moments up to `order` (at most 6) with absolute
/// tolerance 1e-12, including the product-form mixed moments of a complex
/// entry built from two independent parts.
[[nodiscard]] MatchReport verify_moment_match(const EntryDistribution& lhs,
                                              const EntryDistribution& rhs, int order);

}  // namespace wclt
