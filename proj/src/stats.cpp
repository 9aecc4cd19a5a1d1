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

#include "wclt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wclt/errors.hpp"

namespace wclt {

double StreamingMoments::variance() const noexcept {
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  return m2 / static_cast<double>(count - 1);
}

double StreamingMoments::standard_error() const noexcept {
  return std::sqrt(variance() / static_cast<double>(count));
}

StreamingMoments moments_update(StreamingMoments acc, double x) noexcept {
  if (acc.count == 0) {
    acc.min = x;
    acc.max = x;
  } else {
    acc.min = std::min(acc.min, x);
    acc.max = std::max(acc.max, x);
  }
  ++acc.count;
  const double delta = x - acc.mean;
  acc.mean += delta / static_cast<double>(acc.count);
  acc.m2 += delta * (x - acc.mean);
  return acc;
}

StreamingMoments moments_merge(const StreamingMoments& a, const StreamingMoments& b) noexcept {
  if (b.count == 0) return a;
  if (a.count == 0) return b;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double total = na + nb;
  const double delta = b.mean - a.mean;
  StreamingMoments out;
  out.count = a.count + b.count;
  out.mean = a.mean + delta * (nb / total);
  out.m2 = a.m2 + b.m2 + delta * delta * (na * nb / total);
  out.min = std::min(a.min, b.min);
  out.max = std::max(a.max, b.max);
  return out;
}

StreamingMoments tree_merge(std::span<const StreamingMoments> parts) noexcept {
  if (parts.empty()) return {};
  if (parts.size() == 1) return parts.front();
  const std::size_t half = parts.size() / 2;
  return moments_merge(tree_merge(parts.first(half)), tree_merge(parts.subspan(half)));
}

StreamingMoments moments_of(std::span<const double> xs) noexcept {
  std::vector<StreamingMoments> singles;
  singles.reserve(xs.size());
  for (double x : xs) singles.push_back(moments_update({}, x));
  return tree_merge(singles);
}

double skewness(std::span<const double> xs) {
  if (xs.size() < 3) throw InsufficientDataError("skewness needs at least 3 samples");
  const auto m = moments_of(xs);
  double m3 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  const double m2 = m.m2 / n;
  if (!(m2 > 0.0)) throw InsufficientDataError("skewness of a constant sample is undefined");
  return (m3 / n) / std::pow(m2, 1.5);
}

SampleSet::SampleSet(std::vector<double> values, std::size_t capacity)
    : capacity_(capacity), values_(std::move(values)) {
  if (values_.size() > capacity_) {
    throw CapacityError("sample set holds at most " + std::to_string(capacity_) + " values");
  }
  std::sort(values_.begin(), values_.end());
}

void SampleSet::insert(double x) {
  if (values_.size() >= capacity_) {
    throw CapacityError("sample set holds at most " + std::to_string(capacity_) + " values");
  }
  values_.insert(std::upper_bound(values_.begin(), values_.end(), x), x);
}

double normal_cdf(double x) noexcept {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double kolmogorov_survival(double lambda) noexcept {
  if (!(lambda > 0.0)) return 1.0;
  constexpr int kTerms = 100;
  if (lambda < 1.18) {
    // Jacobi-transformed series, fast for small lambda.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= kTerms; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double q = 0.0;
  for (int k = 1; k <= kTerms; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    q += (k % 2 == 1 ? 2.0 : -2.0) * term;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_one_sample(const SampleSet& samples, std::size_t min_samples) {
  if (samples.size() < min_samples) {
    throw InsufficientDataError("one-sample KS needs at least " + std::to_string(min_samples) +
                                " samples, got " + std::to_string(samples.size()));
  }
  const auto xs = samples.values();
  const double m = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = normal_cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / m - f, f - static_cast<double>(i) / m});
  }
  return {d, kolmogorov_survival(std::sqrt(m) * d)};
}

KsResult ks_two_sample(const SampleSet& a, const SampleSet& b, std::size_t min_samples) {
  if (a.size() < min_samples || b.size() < min_samples) {
    throw InsufficientDataError("two-sample KS needs at least " + std::to_string(min_samples) +
                                " samples in each set");
  }
  const auto xs = a.values();
  const auto ys = b.values();
  const double na = static_cast<double>(xs.size());
  const double nb = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double x = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == x) ++i;
    while (j < ys.size() && ys[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double en = na * nb / (na + nb);
  return {d, kolmogorov_survival(std::sqrt(en) * d)};
}

LinearFit regress_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw InsufficientDataError("regression needs at least two points");
  const double n = static_cast<double>(points.size());
  double mx = 0.0;
  double my = 0.0;
  for (const auto& [x, y] : points) {
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (const auto& [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (!(sxx > 0.0)) throw InsufficientDataError("regression needs at least two distinct x values");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace wclt
