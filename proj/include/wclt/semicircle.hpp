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

namespace wclt {

/// Semicircle density (1/2pi) sqrt(4 - x^2) on [-2, 2].
[[nodiscard]] double rho_sc_density(double x) noexcept;

/// Closed-form semicircle distribution function, clamped to 0 and 1 outside
/// [-2, 2].
[[nodiscard]] double semicircle_cdf(double y) noexcept;

/// Classical location t(q): semicircle_cdf(t(q)) = q. Newton with a
/// bisection fallback where the density vanishes. Throws std::domain_error
/// for q outside [0, 1].
[[nodiscard]] double quantile(double q);

/// t'(q) = 1 / rho_sc(t(q)). Throws std::domain_error outside
/// [1e-6, 1 - 1e-6], where the derivative blows up.
[[nodiscard]] double quantile_derivative(double q);

/// Leading-order moments of Y_n = N_[y, inf)(W_n).
struct TheoryPrediction {
  std::size_t n = 0;
  double y = 0.0;
  int beta = 2;
  /// n * rho_sc([y, inf)).
  double mean = 0.0;
  /// ln(n) / (2 pi^2) for beta = 2, twice that for beta = 1.
  double variance = 0.0;
  double sigma = 0.0;
  /// Classical location y and the beta = 2 eigenvalue fluctuation scale there,
  /// sqrt(2 ln n / ((4 - y^2) n^2)).
  double center = 0.0;
  double fluctuation_std = 0.0;
};

/// Throws std::invalid_argument for n < 2, beta outside {1, 2}, or y outside
/// the open bulk (-2, 2).
[[nodiscard]] TheoryPrediction predict(std::size_t n, double y, int beta);

/// (count - mean) / sigma.
[[nodiscard]] double clt_normalize(double count, const TheoryPrediction& p);

struct FluctuationParams {
  double center = 0.0;
  double std = 0.0;
};

/// Gaussian approximation of the bulk eigenvalue lambda_i(W_n):
/// center t(i/n), std sqrt(2 ln n / ((4 - t^2) n^2)). Throws
/// std::domain_error unless 0.01 < i/n < 0.99.
[[nodiscard]] FluctuationParams fluctuation_params(std::size_t i, std::size_t n);

struct IndexMap {
  double index = 0.0;   // i_n
  double scaled = 0.0;  // x_n
};

/// The index i_n = n F(y) - x sqrt(ln n / (2 pi^2)) and the rescaled offset
/// x_n = sqrt((4 - t^2) / 2) (y - t) n / sqrt(ln n), with t = t(i_n / n),
/// which tends to x as n grows.
[[nodiscard]] IndexMap clt_index_map(double y, double x, std::size_t n);

/// (ln n)^(C ln ln n) * min(i, n - i + 1)^(-1/3) * n^(-2/3).
[[nodiscard]] double rigidity_window(std::size_t i, std::size_t n, double c);

}  // namespace wclt
