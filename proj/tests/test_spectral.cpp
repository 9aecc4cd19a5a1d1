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

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "wclt/ensembles.hpp"
#include "wclt/errors.hpp"
#include "wclt/spectral.hpp"

using namespace wclt;

namespace {

TridiagonalMatrix pair01() { return TridiagonalMatrix({0.0, 0.0}, {1.0}); }

TridiagonalMatrix random_tridiagonal(std::size_t n, Rng& rng) {
  std::vector<double> a(n), b(n - 1);
  for (auto& x : a) x = rng.normal();
  for (auto& x : b) x = std::abs(rng.normal());
  return TridiagonalMatrix(std::move(a), std::move(b));
}

std::vector<std::vector<std::complex<double>>> to_dense(const HermitianMatrix& h) {
  const std::size_t n = h.size();
  std::vector<std::vector<std::complex<double>>> d(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) d[i][j] = h(i, j);
  return d;
}

std::vector<double> tridiag_to_oracle(const TridiagonalMatrix& t) {
  const std::size_t n = t.size();
  oracle::Dense d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = t.diag()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) d[i][i + 1] = d[i + 1][i] = t.subdiag()[i];
  return oracle::jacobi_eigenvalues(d);
}

}  // namespace

TEST_CASE("tridiagonal construction validates its input") {
  CHECK_THROWS_AS(TridiagonalMatrix({1.0, 2.0}, {}), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalMatrix({1.0, 2.0}, {-1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalMatrix({1.0, std::nan("")}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(TridiagonalMatrix({1.0, 1.0}, {std::numeric_limits<double>::infinity()}),
                  std::invalid_argument);
  const auto c = TridiagonalMatrix::canonical({1.0, 2.0, 3.0}, {-1.0, 2.0});
  CHECK(c.subdiag()[0] == 1.0);
  CHECK(c.subdiag()[1] == 2.0);
  CHECK(c.norm_inf() == 5.0);
  const auto [lo, hi] = c.gershgorin_bounds();
  CHECK(lo == -1.0);
  CHECK(hi == 5.0);
}

TEST_CASE("Hermitian storage mirrors the conjugate") {
  HermitianMatrix h(3, 2);
  h.set(0, 2, {1.0, 2.0});
  CHECK(h(2, 0) == std::complex<double>(1.0, -2.0));
  h.set(2, 1, {0.5, 0.25});
  CHECK(h(1, 2) == std::complex<double>(0.5, -0.25));
  CHECK_THROWS_AS(h.set(1, 1, {1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(h.set(3, 0, {1.0, 0.0}), std::out_of_range);
  HermitianMatrix s(2, 1);
  CHECK_THROWS_AS(s.set(0, 1, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("negcount on small closed forms") {
  CHECK(negcount(pair01(), 0.0) == 1);
  CHECK(negcount(pair01(), -1.5) == 0);
  CHECK(negcount(pair01(), 1.5) == 2);
  const TridiagonalMatrix ones(std::vector<double>(7, 1.0), std::vector<double>(6, 0.0));
  CHECK(negcount(ones, 2.0) == 7);
  CHECK(negcount(ones, 0.5) == 0);
  Rng rng(1);
  const auto t = random_tridiagonal(40, rng);
  const auto [lo, hi] = t.gershgorin_bounds();
  CHECK(negcount(t, lo - 1e-9) == 0);
  CHECK(negcount(t, hi + 1e-9) == 40);
  CHECK(negcount(t, -std::numeric_limits<double>::max()) == 0);
  CHECK(negcount(t, std::numeric_limits<double>::max()) == 40);
}

TEST_CASE("negcount survives exact zero pivots") {
  // T - 0 has a zero leading pivot; the count must still be exact.
  const TridiagonalMatrix t({0.0, 0.0, 0.0}, {1.0, 1.0});  // spectrum {-sqrt2, 0, sqrt2}
  CHECK(negcount(t, -1.0) == 1);
  CHECK(negcount(t, 1.0) == 2);
  const TridiagonalMatrix zero({0.0, 0.0}, {0.0});
  CHECK(negcount(zero, 0.5) == 2);
  CHECK(negcount(zero, -0.5) == 0);
}

TEST_CASE("negcount is nondecreasing in y") {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = random_tridiagonal(60, rng);
    std::size_t prev = 0;
    for (double y = -12.0; y <= 12.0; y += 0.01) {
      const std::size_t c = negcount(t, y);
      REQUIRE(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("negcount agrees with the characteristic polynomial Sturm chain") {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto t = random_tridiagonal(25, rng);
    const std::vector<double> a(t.diag().begin(), t.diag().end());
    const std::vector<double> b(t.subdiag().begin(), t.subdiag().end());
    for (int k = 0; k < 10; ++k) {
      const double y = 4.0 * rng.uniform_symmetric();
      REQUIRE(negcount(t, y) == oracle::sturm_count_below(a, b, y));
    }
  }
}

TEST_CASE("counting function") {
  CHECK(counting_function(pair01(), 0.0, Scale::kRaw) == 1);
  CHECK(counting_function(pair01(), -5.0, Scale::kRaw) == 2);
  // Normalized: eigenvalues of T / sqrt(2) are +-0.7071.
  CHECK(counting_function(pair01(), 0.75, Scale::kNormalized) == 0);
  CHECK(counting_function(pair01(), 0.7, Scale::kNormalized) == 1);
  Rng rng(4);
  const auto t = random_tridiagonal(80, rng);
  for (int k = 0; k < 100; ++k) {
    double y1 = 3.0 * rng.uniform_symmetric();
    double y2 = 3.0 * rng.uniform_symmetric();
    if (y1 > y2) std::swap(y1, y2);
    // N[y1, inf) - N[y2, inf) counts [y1, y2).
    CHECK(counting_function(t, y1, Scale::kRaw) - counting_function(t, y2, Scale::kRaw) ==
          negcount(t, y2) - negcount(t, y1));
  }
}

TEST_CASE("kth eigenvalue on closed forms") {
  const double tol = 1e-12;
  CHECK(std::abs(kth_eigenvalue(pair01(), 1, tol) + 1.0) <= tol);
  CHECK(std::abs(kth_eigenvalue(pair01(), 2, tol) - 1.0) <= tol);
  const TridiagonalMatrix d({3.0, -1.0, 2.0, 0.5}, {0.0, 0.0, 0.0});
  const double want[] = {-1.0, 0.5, 2.0, 3.0};
  for (std::size_t i = 1; i <= 4; ++i) CHECK(std::abs(kth_eigenvalue(d, i, tol) - want[i - 1]) <= tol);
  CHECK_THROWS_AS((void)kth_eigenvalue(pair01(), 0, tol), std::out_of_range);
  CHECK_THROWS_AS((void)kth_eigenvalue(pair01(), 3, tol), std::out_of_range);
  CHECK_THROWS_AS((void)kth_eigenvalue(pair01(), 1, 0.0), std::invalid_argument);
}

TEST_CASE("kth eigenvalue is nondecreasing in the index") {
  Rng rng(5);
  const auto t = random_tridiagonal(100, rng);
  double prev = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= 100; ++i) {
    const double x = kth_eigenvalue(t, i, 1e-10);
    CHECK(x >= prev);
    prev = x;
  }
}

TEST_CASE("duality between counts and ordered eigenvalues") {
  Rng rng(6);
  const double tol = 1e-10;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto t = random_tridiagonal(50, rng);
    const double y = 5.0 * rng.uniform_symmetric();
    const std::size_t count = counting_function(t, y, Scale::kRaw);
    for (std::size_t i = 1; i <= 50; i += 7) {
      const double lambda = kth_eigenvalue(t, i, tol);
      REQUIRE((count <= 50 - i) == (lambda <= y + 2 * tol));
    }
  }
}

TEST_CASE("full spectrum on closed forms") {
  const auto s = all_eigenvalues(pair01(), 1e-14);
  REQUIRE(s.size() == 2);
  CHECK(s.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.values[1] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.scale == Scale::kRaw);
  const auto single = all_eigenvalues(TridiagonalMatrix({2.5}, {}), 1e-12);
  CHECK(single.values == std::vector<double>{2.5});
  const auto n = normalize(all_eigenvalues(TridiagonalMatrix({4.0, 4.0, 4.0, 4.0}, {0.0, 0.0, 0.0}), 1e-12));
  CHECK(n.scale == Scale::kNormalized);
  CHECK(n.values == std::vector<double>(4, 2.0));
}

TEST_CASE("full spectrum contracts") {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 150);
    CAPTURE(n);
    std::vector<double> a(n), b(n - 1);
    for (auto& x : a) x = rng.normal();
    // Include graded and nearly decoupled blocks.
    for (auto& x : b) x = rng.uniform() < 0.1 ? 1e-14 * rng.uniform() : std::abs(rng.normal());
    const TridiagonalMatrix t(a, b);
    const double tol = 1e-10;
    const auto s = all_eigenvalues(t, tol);
    REQUIRE(s.size() == n);
    CHECK(std::is_sorted(s.values.begin(), s.values.end()));
    const double trace = std::accumulate(a.begin(), a.end(), 0.0);
    const double sum = std::accumulate(s.values.begin(), s.values.end(), 0.0);
    CHECK(std::abs(sum - trace) <= n * tol + n * 1e-15 * t.norm_inf() * 10);
    for (std::size_t i = 1; i <= n; ++i) {
      REQUIRE(negcount(t, s.values[i - 1] - 2 * tol) <= i - 1);
      REQUIRE(negcount(t, s.values[i - 1] + 2 * tol) >= i);
      REQUIRE(std::abs(kth_eigenvalue(t, i, tol) - s.values[i - 1]) <= 2 * tol);
    }
  }
}

TEST_CASE("full spectrum matches a dense Jacobi solve") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto t = random_tridiagonal(30, rng);
    const auto want = tridiag_to_oracle(t);
    const auto got = all_eigenvalues(t, 1e-12).values;
    for (std::size_t i = 0; i < 30; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("batched full spectrum is bit-identical to single calls") {
  Rng rng(9);
  std::vector<TridiagonalMatrix> batch;
  for (std::size_t n : {200u, 17u, 300u, 1u, 64u, 128u}) {
    batch.push_back(sample_tridiagonal_beta(n, 2, rng));
  }
  const auto together = all_eigenvalues(batch, 1e-10);
  REQUIRE(together.size() == batch.size());
  for (std::size_t k = 0; k < batch.size(); ++k) {
    CHECK(together[k].values == all_eigenvalues(batch[k], 1e-10).values);
  }
  CHECK(all_eigenvalues(std::span<const TridiagonalMatrix>{}, 1e-10).empty());
}

TEST_CASE("Householder reduction fixed points") {
  HermitianMatrix diag(4, 2);
  const double d[] = {3.0, -1.0, 0.0, 2.0};
  for (std::size_t i = 0; i < 4; ++i) diag.set(i, i, d[i]);
  const auto td = householder_tridiagonalize(diag);
  CHECK(std::ranges::equal(td.diag(), std::vector<double>(d, d + 4)));
  CHECK(std::ranges::all_of(td.subdiag(), [](double b) { return b == 0.0; }));

  HermitianMatrix tri(4, 1);
  const double a[] = {1.0, 2.0, 3.0, 4.0};
  const double b[] = {-0.5, 1.5, -2.0};
  for (std::size_t i = 0; i < 4; ++i) tri.set(i, i, a[i]);
  for (std::size_t i = 0; i < 3; ++i) tri.set(i, i + 1, b[i]);
  const auto tt = householder_tridiagonalize(tri);
  for (std::size_t i = 0; i < 4; ++i) CHECK(tt.diag()[i] == doctest::Approx(a[i]).epsilon(1e-15));
  for (std::size_t i = 0; i < 3; ++i) CHECK(tt.subdiag()[i] == doctest::Approx(std::abs(b[i])).epsilon(1e-15));
}

TEST_CASE("Householder reduction of the 3x3 all-ones matrix") {
  for (int beta : {1, 2}) {
    HermitianMatrix ones(3, beta);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i; j < 3; ++j) ones.set(i, j, 1.0);
    const auto s = all_eigenvalues(householder_tridiagonalize(ones), 1e-14).values;
    CHECK(std::abs(s[0]) <= 1e-12);
    CHECK(std::abs(s[1]) <= 1e-12);
    CHECK(std::abs(s[2] - 3.0) <= 1e-12);
  }
}

TEST_CASE("Householder reduction preserves the counting function") {
  for (const auto& spec : {EnsembleSpec::gue(30), EnsembleSpec::goe(30)}) {
    for (std::size_t r = 0; r < 20; ++r) {
      const auto h = sample_dense(spec, SeedStream{31, r});
      const auto t = householder_tridiagonalize(h);
      const auto oracle_ev = oracle::hermitian_eigenvalues(to_dense(h));
      Rng rng(SeedStream{32, r});
      for (int k = 0; k < 20; ++k) {
        const double y = 10.0 * rng.uniform_symmetric();
        const auto below = static_cast<std::size_t>(
            std::lower_bound(oracle_ev.begin(), oracle_ev.end(), y) - oracle_ev.begin());
        REQUIRE(negcount(t, y) == below);
      }
    }
  }
}

TEST_CASE("Householder reduction skips already reduced columns") {
  // Column 0 has a single nonzero below the diagonal, complex valued.
  HermitianMatrix h(3, 2);
  h.set(0, 0, 1.0);
  h.set(0, 1, {0.0, 2.0});
  h.set(1, 1, 1.0);
  h.set(2, 2, 5.0);
  const auto t = householder_tridiagonalize(h);
  CHECK(t.subdiag()[0] == doctest::Approx(2.0));
  CHECK(t.subdiag()[1] == 0.0);
  CHECK(t.diag()[2] == 5.0);
}

TEST_CASE("default tolerance scales with sqrt(n)") {
  CHECK(default_tolerance(100) == doctest::Approx(1e-9));
  CHECK(default_tolerance(1) == doctest::Approx(1e-10));
}
