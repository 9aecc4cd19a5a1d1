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
#include <span>
#include <utility>
#include <vector>

namespace wclt {

/// Welford accumulator; merge follows Chan et al.
struct StreamingMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations
  double min = 0.0;
  double max = 0.0;

  /// Unbiased sample variance; NaN for fewer than two observations.
  [[nodiscard]] double variance() const noexcept;
  /// Standard error of the mean; NaN for fewer than two observations.
  [[nodiscard]] double standard_error() const noexcept;
};

[[nodiscard]] StreamingMoments moments_update(StreamingMoments acc, double x) noexcept;
[[nodiscard]] StreamingMoments moments_merge(const StreamingMoments& a, const StreamingMoments& b) noexcept;

/// Merges in a fixed balanced binary tree over the input order, so the result
/// depends only on the sequence, not on how it was produced.
[[nodiscard]] StreamingMoments tree_merge(std::span<const StreamingMoments> parts) noexcept;

/// Batch moments of a sequence, accumulated through tree_merge of singletons.
[[nodiscard]] StreamingMoments moments_of(std::span<const double> xs) noexcept;

/// Sample skewness g1 = m3 / m2^(3/2) with population central moments.
[[nodiscard]] double skewness(std::span<const double> xs);

/// Sorted sample with bounded capacity.
class SampleSet {
 public:
  static constexpr std::size_t kDefaultCapacity = 1'000'000;

  explicit SampleSet(std::size_t capacity = kDefaultCapacity) : capacity_(capacity) {}
  /// Sorts the input. Throws CapacityError if it exceeds the capacity.
  explicit SampleSet(std::vector<double> values, std::size_t capacity = kDefaultCapacity);

  /// Inserts keeping sort order. Throws CapacityError when full.
  void insert(double x);

  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] std::size_t capacity() const noexcept { return capacity_; }
  [[nodiscard]] bool empty() const noexcept { return values_.empty(); }

 private:
  std::size_t capacity_;
  std::vector<double> values_;
};

/// Standard normal distribution function, via erfc.
[[nodiscard]] double normal_cdf(double x) noexcept;

/// Kolmogorov survival function Q(lambda) = P(K > lambda).
[[nodiscard]] double kolmogorov_survival(double lambda) noexcept;

struct KsResult {
  double d = 0.0;
  /// Asymptotic (approximate) p-value.
  double p = 1.0;
};

inline constexpr std::size_t kKsMinSamples = 8;

/// sup |F_emp - Phi|. Throws InsufficientDataError below `min_samples`.
[[nodiscard]] KsResult ks_one_sample(const SampleSet& samples,
                                     std::size_t min_samples = kKsMinSamples);

/// Two-sample statistic; p uses the effective size ab / (a + b).
[[nodiscard]] KsResult ks_two_sample(const SampleSet& a, const SampleSet& b,
                                     std::size_t min_samples = kKsMinSamples);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares. Throws InsufficientDataError unless there are at
/// least two distinct abscissae.
[[nodiscard]] LinearFit regress_slope(std::span<const std::pair<double, double>> points);

}  // namespace wclt
