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

#include "wclt/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wclt {

using std::numbers::pi;

double rho_sc_density(double x) noexcept {
  if (!(x > -2.0 && x < 2.0)) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * pi);
}

double semicircle_cdf(double y) noexcept {
  if (y <= -2.0) return 0.0;
  if (y >= 2.0) return 1.0;
  return 0.5 + y * std::sqrt(4.0 - y * y) / (4.0 * pi) + std::asin(0.5 * y) / pi;
}

double quantile(double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile probability must lie in [0, 1]");
  if (q == 0.0) return -2.0;
  if (q == 1.0) return 2.0;
  if (q == 0.5) return 0.0;

  constexpr double kSlopeFloor = 1e-8;
  double lo = -2.0;
  double hi = 2.0;
  double t = 0.0;
  for (int it = 0; it < 200; ++it) {
    const double f = semicircle_cdf(t) - q;
    if (f == 0.0) return t;
    if (f < 0.0) {
      lo = t;
    } else {
      hi = t;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon()) break;
    const double slope = rho_sc_density(t);
    double next = slope >= kSlopeFloor ? t - f / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * std::max(1.0, std::abs(t))) return next;
    t = next;
  }
  return t;
}

double quantile_derivative(double q) {
  constexpr double kEdge = 1e-6;
  if (!(q >= kEdge && q <= 1.0 - kEdge)) {
    throw std::domain_error("quantile derivative is only defined for q in [1e-6, 1 - 1e-6]");
  }
  return 1.0 / rho_sc_density(quantile(q));
}

TheoryPrediction predict(std::size_t n, double y, int beta) {
  if (n < 2) throw std::invalid_argument("prediction needs n >= 2");
  if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
  if (!(y > -2.0 && y < 2.0)) throw std::invalid_argument("y must lie strictly inside (-2, 2)");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  TheoryPrediction p;
  p.n = n;
  p.y = y;
  p.beta = beta;
  p.mean = nd * (1.0 - semicircle_cdf(y));
  const double gue_variance = log_n / (2.0 * pi * pi);
  p.variance = beta == 2 ? gue_variance : 2.0 * gue_variance;
  p.sigma = std::sqrt(p.variance);
  p.center = y;
  p.fluctuation_std = std::sqrt(2.0 * log_n / ((4.0 - y * y) * nd * nd));
  return p;
}

double clt_normalize(double count, const TheoryPrediction& p) {
  if (!(p.variance > 0.0)) throw std::invalid_argument("prediction variance must be positive");
  return (count - p.mean) / p.sigma;
}

FluctuationParams fluctuation_params(std::size_t i, std::size_t n) {
  if (i < 1 || i > n) throw std::domain_error("index must satisfy 1 <= i <= n");
  const double q = static_cast<double>(i) / static_cast<double>(n);
  if (!(q > 0.01 && q < 0.99)) {
    throw std::domain_error("index " + std::to_string(i) + " is outside the bulk window (0.01n, 0.99n)");
  }
  const double nd = static_cast<double>(n);
  FluctuationParams f;
  f.center = quantile(q);
  f.std = std::sqrt(2.0 * std::log(nd) / ((4.0 - f.center * f.center) * nd * nd));
  return f;
}

IndexMap clt_index_map(double y, double x, std::size_t n) {
  if (n < 3) throw std::invalid_argument("index map needs n >= 3");
  if (!(y > -2.0 && y < 2.0)) throw std::invalid_argument("y must lie strictly inside (-2, 2)");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  IndexMap out;
  out.index = nd * semicircle_cdf(y) - x * std::sqrt(log_n / (2.0 * pi * pi));
  const double t = quantile(std::clamp(out.index / nd, 0.0, 1.0));
  out.scaled = std::sqrt((4.0 - t * t) / 2.0) * (y - t) / (std::sqrt(log_n) / nd);
  return out;
}

double rigidity_window(std::size_t i, std::size_t n, double c) {
  if (i < 1 || i > n) throw std::domain_error("index must satisfy 1 <= i <= n");
  if (!(c > 0.0)) throw std::invalid_argument("rigidity constant must be positive");
  const double nd = static_cast<double>(n);
  const double log_n = std::log(nd);
  const double edge_distance = static_cast<double>(std::min(i, n - i + 1));
  return std::pow(log_n, c * std::log(log_n)) * std::pow(edge_distance, -1.0 / 3.0) *
         std::pow(nd, -2.0 / 3.0);
}

}  // namespace wclt
