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

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "wclt/rng.hpp"
#include "wclt/semicircle.hpp"

using namespace wclt;
using std::numbers::pi;

TEST_CASE("semicircle density") {
  CHECK(rho_sc_density(0.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(rho_sc_density(0.0) == doctest::Approx(0.3183099).epsilon(1e-7));
  CHECK(rho_sc_density(2.0) == 0.0);
  CHECK(rho_sc_density(-2.0) == 0.0);
  CHECK(rho_sc_density(3.0) == 0.0);
  const double mass = oracle::integrate([](double x) { return rho_sc_density(x); }, -2.0, 2.0, 1e-14);
  CHECK(std::abs(mass - 1.0) <= 1e-10);
}

TEST_CASE("semicircle distribution function") {
  CHECK(semicircle_cdf(0.0) == 0.5);
  CHECK(semicircle_cdf(-2.0) == 0.0);
  CHECK(semicircle_cdf(2.0) == 1.0);
  CHECK(semicircle_cdf(-7.0) == 0.0);
  CHECK(semicircle_cdf(7.0) == 1.0);
  CHECK(std::abs(semicircle_cdf(1.0) - oracle::semicircle_cdf(1.0)) <= 1e-12);
  CHECK(semicircle_cdf(1.0) == doctest::Approx(0.8044989).epsilon(1e-7));
  Rng rng(1);
  double prev = 0.0;
  for (double y = -2.0; y <= 2.0; y += 1e-3) {
    const double f = semicircle_cdf(y);
    CHECK(f >= prev);
    prev = f;
    CHECK(std::abs(semicircle_cdf(y) + semicircle_cdf(-y) - 1.0) <= 1e-14);
  }
}

TEST_CASE("closed-form distribution function matches quadrature") {
  Rng rng(2);
  for (int k = 0; k < 1000; ++k) {
    const double y = 2.0 * rng.uniform_symmetric();
    REQUIRE(std::abs(semicircle_cdf(y) - oracle::semicircle_cdf(y)) <= 1e-10);
  }
}

TEST_CASE("quantile") {
  CHECK(quantile(0.5) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(quantile(0.0) == -2.0);
  CHECK(quantile(1.0) == 2.0);
  CHECK(std::abs(quantile(0.8044989) - 1.0) <= 1e-6);
  CHECK(std::abs(quantile(semicircle_cdf(1.0)) - 1.0) <= 1e-8);
  CHECK_THROWS_AS((void)quantile(-0.1), std::domain_error);
  CHECK_THROWS_AS((void)quantile(1.1), std::domain_error);
  CHECK_THROWS_AS((void)quantile(std::nan("")), std::domain_error);
}

TEST_CASE("quantile inverts the distribution function") {
  for (double y = -1.99; y <= 1.99; y += 0.001) {
    REQUIRE(std::abs(quantile(semicircle_cdf(y)) - y) <= 1e-8);
  }
  for (double q = 1e-6; q < 1.0 - 1e-6; q += 1e-4) {
    REQUIRE(std::abs(semicircle_cdf(quantile(q)) - q) <= 1e-10);
  }
  CHECK(std::abs(semicircle_cdf(quantile(1e-6)) - 1e-6) <= 1e-10);
  CHECK(std::abs(semicircle_cdf(quantile(1.0 - 1e-6)) - (1.0 - 1e-6)) <= 1e-10);
}

TEST_CASE("quantile derivative") {
  CHECK(quantile_derivative(0.5) == doctest::Approx(pi).epsilon(1e-12));
  for (double q : {0.01, 0.2, 0.37}) CHECK(quantile_derivative(q) == doctest::Approx(quantile_derivative(1 - q)).epsilon(1e-8));
  const double h = 1e-6;
  const double fd = (quantile(0.3 + h) - quantile(0.3 - h)) / (2 * h);
  CHECK(std::abs(fd - quantile_derivative(0.3)) <= 1e-6);
  CHECK_THROWS_AS((void)quantile_derivative(1e-7), std::domain_error);
  CHECK_THROWS_AS((void)quantile_derivative(1.0), std::domain_error);
}

TEST_CASE("theory prediction") {
  const auto p = predict(4096, 0.0, 2);
  CHECK(p.mean == 2048.0);
  CHECK(p.variance == doctest::Approx(0.421383).epsilon(1e-6));
  CHECK(p.sigma == doctest::Approx(std::sqrt(p.variance)));
  CHECK(p.center == 0.0);
  const auto g = predict(4096, 0.0, 1);
  CHECK(g.variance == 2.0 * p.variance);
  const auto edge = predict(2, -2.0 + 1e-12, 2);
  CHECK(edge.mean == doctest::Approx(2.0).epsilon(1e-6));
  for (std::size_t n = 2; n <= 4096; n += 2) REQUIRE(predict(n, 0.0, 2).mean == n / 2.0);
  CHECK_THROWS_AS((void)predict(1, 0.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)predict(10, 2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)predict(10, -2.0, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)predict(10, 0.0, 4), std::invalid_argument);
}

TEST_CASE("CLT normalization") {
  const auto p = predict(4096, 0.0, 2);
  CHECK(clt_normalize(p.mean, p) == 0.0);
  CHECK(clt_normalize(2050, p) == doctest::Approx(3.0811).epsilon(1e-4));
  CHECK(clt_normalize(2060, p) - clt_normalize(2050, p) == doctest::Approx(10.0 / p.sigma));
}

TEST_CASE("fluctuation parameters") {
  const auto mid = fluctuation_params(8192, 16384);
  CHECK(mid.center == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(mid.std == doctest::Approx(1.3444e-4).epsilon(1e-4));
  CHECK(mid.std == doctest::Approx(std::sqrt(std::log(16384.0) / 2.0) / 16384.0).epsilon(1e-12));
  const std::size_t n = 1000;
  for (std::size_t i = 20; i <= 500; i += 40) {
    CHECK(fluctuation_params(i, n).std == doctest::Approx(fluctuation_params(n - i, n).std).epsilon(1e-9));
  }
  double prev = 0.0;
  for (std::size_t i = 500; i <= 980; i += 20) {
    const double s = fluctuation_params(i, n).std;
    CHECK(s >= prev);
    prev = s;
  }
  CHECK_THROWS_AS((void)fluctuation_params(5, 1000), std::domain_error);
  CHECK_THROWS_AS((void)fluctuation_params(995, 1000), std::domain_error);
  CHECK_THROWS_AS((void)fluctuation_params(10, 1000), std::domain_error);
}

TEST_CASE("CLT index map") {
  const auto zero = clt_index_map(0.0, 0.0, 1000);
  CHECK(zero.index == doctest::Approx(500.0));
  CHECK(zero.scaled == doctest::Approx(0.0).scale(1.0));
  CHECK(std::abs(clt_index_map(0.5, 1.0, 1'000'000).scaled - 1.0) <= 0.05);
  for (double x : {0.3, 1.0, 2.5}) {
    CHECK(std::abs(clt_index_map(0.0, -x, 5000).scaled + clt_index_map(0.0, x, 5000).scaled) <= 1e-9);
  }
  for (std::size_t n : {100u, 10000u, 1000000u}) {
    for (double y = -1.0; y <= 1.0; y += 0.25) {
      for (double x = -3.0; x <= 3.0; x += 0.5) {
        const auto m = clt_index_map(y, x, n);
        REQUIRE(std::abs(m.scaled - x) <= 10.0 / std::sqrt(std::log(double(n))));
      }
    }
  }
}

TEST_CASE("rigidity window") {
  const std::size_t n = 1000;
  const double c = 1.3;
  const double ln = std::log(double(n));
  const double poly = std::pow(ln, c * std::log(ln));
  for (std::size_t i = 1; i <= n; i += 37) {
    CHECK(rigidity_window(i, n, c) == doctest::Approx(rigidity_window(n - i + 1, n, c)).epsilon(1e-14));
  }
  CHECK(rigidity_window(n / 2, n, c) ==
        doctest::Approx(poly * std::cbrt(2.0) / n).epsilon(1e-12));
  CHECK(rigidity_window(1, n, c) == doctest::Approx(poly * std::pow(n, -2.0 / 3.0)).epsilon(1e-12));
}
