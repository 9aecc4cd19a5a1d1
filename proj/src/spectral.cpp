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

#include "wclt/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wclt/errors.hpp"

namespace wclt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double pivot_floor(const TridiagonalMatrix& t) noexcept {
  return std::max(kEps * t.norm_inf(), std::numeric_limits<double>::min());
}

}  // namespace

TridiagonalMatrix::TridiagonalMatrix(std::vector<double> diag, std::vector<double> subdiag)
    : diag_(std::move(diag)), subdiag_(std::move(subdiag)) {
  const std::size_t n = diag_.size();
  if (n == 0) throw std::invalid_argument("tridiagonal matrix must have order >= 1");
  if (subdiag_.size() != n - 1) {
    throw std::invalid_argument("subdiagonal must have exactly n-1 entries");
  }
  for (double a : diag_) {
    if (!std::isfinite(a)) throw std::invalid_argument("non-finite diagonal entry");
  }
  for (double b : subdiag_) {
    if (!std::isfinite(b)) throw std::invalid_argument("non-finite subdiagonal entry");
    if (b < 0.0) throw std::invalid_argument("subdiagonal must be nonnegative");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag_[i]);
    if (i > 0) row += subdiag_[i - 1];
    if (i + 1 < n) row += subdiag_[i];
    norm_inf_ = std::max(norm_inf_, row);
  }
}

TridiagonalMatrix TridiagonalMatrix::canonical(std::vector<double> diag,
                                               std::vector<double> subdiag) {
  for (double& b : subdiag) b = std::abs(b);
  return TridiagonalMatrix(std::move(diag), std::move(subdiag));
}

std::pair<double, double> TridiagonalMatrix::gershgorin_bounds() const noexcept {
  const std::size_t n = diag_.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += subdiag_[i - 1];
    if (i + 1 < n) radius += subdiag_[i];
    lo = std::min(lo, diag_[i] - radius);
    hi = std::max(hi, diag_[i] + radius);
  }
  return {lo, hi};
}

HermitianMatrix::HermitianMatrix(std::size_t n, int beta)
    : n_(n), beta_(beta), packed_(n * (n + 1) / 2) {
  if (n == 0) throw std::invalid_argument("matrix order must be >= 1");
  if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
}

void HermitianMatrix::set(std::size_t i, std::size_t j, value_type value) {
  if (i >= n_ || j >= n_) throw std::out_of_range("matrix index out of range");
  if ((i == j || beta_ == 1) && value.imag() != 0.0) {
    throw std::invalid_argument(i == j ? "diagonal entries must be real"
                                       : "real symmetric matrix entries must be real");
  }
  if (i <= j) {
    packed_[index(i, j)] = value;
  } else {
    packed_[index(j, i)] = std::conj(value);
  }
}

double default_tolerance(std::size_t n) noexcept {
  return 1e-10 * std::sqrt(static_cast<double>(n));
}

std::size_t negcount(const TridiagonalMatrix& t, double y) noexcept {
  const auto a = t.diag();
  const auto b = t.subdiag();
  const double floor = pivot_floor(t);
  const std::size_t n = a.size();

  double d = a[0] - y;
  if (std::abs(d) < floor) d = -floor;
  std::size_t count = d < 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    d = (a[i] - y) - b[i - 1] * b[i - 1] / d;
    if (std::abs(d) < floor) d = -floor;
    count += d < 0.0;
  }
  return count;
}

std::size_t counting_function(const TridiagonalMatrix& t, double y, Scale scale) noexcept {
  const double shift =
      scale == Scale::kNormalized ? y * std::sqrt(static_cast<double>(t.size())) : y;
  return t.size() - negcount(t, shift);
}

double kth_eigenvalue(const TridiagonalMatrix& t, std::size_t i, double tol) {
  const std::size_t n = t.size();
  if (i < 1 || i > n) {
    throw std::out_of_range("eigenvalue index " + std::to_string(i) + " outside [1, " +
                            std::to_string(n) + "]");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  auto [lo, hi] = t.gershgorin_bounds();
  const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + pivot_floor(t);
  lo -= pad;
  hi += pad;
  const int iterations = 1 + static_cast<int>(std::ceil(std::log2(std::max((hi - lo) / tol, 1.0))));
  for (int it = 0; it < iterations; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (negcount(t, mid) >= i) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

// Eigenvalues of [[a, b], [b, c]] as (smaller, larger).
std::pair<double, double> eig2x2(double a, double b, double c) noexcept {
  const double mean = 0.5 * (a + c);
  const double radius = 0.5 * std::hypot(a - c, 2.0 * b);
  return {mean - radius, mean + radius};
}

// One matrix inside the root-free (Pal-Walker-Kahan) QL iteration, written
// as a resumable state machine so that the inner sweeps of several
// independent matrices can be interleaved. The sweep body is latency bound
// (two dependent divisions per step); interleaving lanes hides that latency
// without changing any lane's arithmetic.
struct QlLane {
  std::vector<double> d;
  std::vector<double> e2;  // squared subdiagonal
  std::size_t n = 0;
  double eps2 = 0.0;
  double abs_floor = 0.0;
  std::size_t budget = 0;
  std::size_t sweeps = 0;

  std::size_t block_start = 0;
  std::size_t l = 0;
  std::size_t lend = 0;
  bool in_block = false;

  // Current sweep.
  std::size_t m = 0;
  std::size_t i = 0;
  double p = 0.0, c = 0.0, s = 0.0, gamma = 0.0, sigma = 0.0;

  explicit QlLane(const TridiagonalMatrix& t)
      : d(t.diag().begin(), t.diag().end()), e2(t.size() - 1), n(t.size()) {
    for (std::size_t k = 0; k + 1 < n; ++k) e2[k] = t.subdiag()[k] * t.subdiag()[k];
    eps2 = kEps * kEps;
    abs_floor = (kEps * t.norm_inf()) * (kEps * t.norm_inf());
    budget = 30 * n;
  }

  [[nodiscard]] bool negligible(std::size_t k) const noexcept {
    return e2[k] <= eps2 * std::abs(d[k] * d[k + 1]) || e2[k] <= abs_floor;
  }

  // Deflates until a QL sweep is due (returns true) or the matrix is done.
  bool advance() {
    for (;;) {
      if (!in_block) {
        if (block_start >= n) return false;
        std::size_t block_end = block_start;
        while (block_end + 1 < n && !negligible(block_end)) ++block_end;
        if (block_end + 1 < n) e2[block_end] = 0.0;
        l = block_start;
        lend = block_end;
        block_start = block_end + 1;
        in_block = true;
      }
      if (l >= lend) {
        in_block = false;
        continue;
      }
      std::size_t mm = l;
      while (mm < lend && !negligible(mm)) ++mm;
      if (mm < lend) e2[mm] = 0.0;
      if (mm == l) {
        ++l;
        continue;
      }
      if (mm == l + 1) {
        const auto [lo, hi] = eig2x2(d[l], std::sqrt(e2[l]), d[l + 1]);
        d[l] = lo;
        d[l + 1] = hi;
        e2[l] = 0.0;
        l += 2;
        continue;
      }
      if (sweeps == budget) {
        throw NumericalError("tridiagonal QL did not converge within " + std::to_string(budget) +
                             " sweeps");
      }
      ++sweeps;

      // Shift from the leading 2x2 block.
      const double rte = std::sqrt(e2[l]);
      double g = (d[l + 1] - d[l]) / (2.0 * rte);
      const double r = std::hypot(g, 1.0);
      sigma = d[l] - rte / (g + std::copysign(r, g));
      c = 1.0;
      s = 0.0;
      m = mm;
      i = mm;
      gamma = d[m] - sigma;
      p = gamma * gamma;
      return true;
    }
  }

  [[nodiscard]] std::size_t remaining() const noexcept { return i - l; }

  void finish_sweep() noexcept {
    e2[l] = s * p;
    d[l] = sigma + gamma;
  }
};

// Runs `steps` inner QL steps on each of L lanes, interleaved.
template <std::size_t L>
void run_sweeps(const std::array<QlLane*, L>& lanes, std::size_t steps) noexcept {
  std::array<double*, L> d, e2;
  std::array<double, L> p, c, s, gamma, sigma;
  std::array<std::size_t, L> i, m;
  for (std::size_t j = 0; j < L; ++j) {
    d[j] = lanes[j]->d.data();
    e2[j] = lanes[j]->e2.data();
    p[j] = lanes[j]->p;
    c[j] = lanes[j]->c;
    s[j] = lanes[j]->s;
    gamma[j] = lanes[j]->gamma;
    sigma[j] = lanes[j]->sigma;
    i[j] = lanes[j]->i;
    m[j] = lanes[j]->m;
  }
  for (std::size_t k = 0; k < steps; ++k) {
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t at = --i[j];
      const double bb = e2[j][at];
      const double r = p[j] + bb;
      if (at + 1 != m[j]) e2[j][at + 1] = s[j] * r;
      const double oldc = c[j];
      c[j] = p[j] / r;
      s[j] = bb / r;
      const double oldgam = gamma[j];
      const double alpha = d[j][at];
      gamma[j] = c[j] * (alpha - sigma[j]) - s[j] * oldgam;
      d[j][at + 1] = oldgam + (alpha - gamma[j]);
      p[j] = c[j] != 0.0 ? (gamma[j] * gamma[j]) / c[j] : oldc * bb;
    }
  }
  for (std::size_t j = 0; j < L; ++j) {
    lanes[j]->p = p[j];
    lanes[j]->c = c[j];
    lanes[j]->s = s[j];
    lanes[j]->gamma = gamma[j];
    lanes[j]->i = i[j];
  }
}

constexpr std::size_t kMaxLanes = 4;

void run_sweeps(std::span<QlLane*> lanes, std::size_t steps) noexcept {
  switch (lanes.size()) {
    case 1: run_sweeps<1>({lanes[0]}, steps); break;
    case 2: run_sweeps<2>({lanes[0], lanes[1]}, steps); break;
    case 3: run_sweeps<3>({lanes[0], lanes[1], lanes[2]}, steps); break;
    case 4: run_sweeps<4>({lanes[0], lanes[1], lanes[2], lanes[3]}, steps); break;
    default: break;
  }
}

Spectrum finish(QlLane& lane) {
  for (double v : lane.d) {
    if (!std::isfinite(v)) throw NumericalError("tridiagonal QL produced a non-finite eigenvalue");
  }
  std::sort(lane.d.begin(), lane.d.end());
  return Spectrum{std::move(lane.d), Scale::kRaw};
}

void solve_group(std::span<QlLane> group) {
  std::vector<QlLane*> active;
  for (auto& lane : group) {
    if (lane.n > 1 && lane.advance()) active.push_back(&lane);
  }
  while (!active.empty()) {
    std::size_t steps = active.front()->remaining();
    for (const QlLane* lane : active) steps = std::min(steps, lane->remaining());
    run_sweeps(active, steps);
    std::vector<QlLane*> next;
    for (QlLane* lane : active) {
      if (lane->remaining() == 0) {
        lane->finish_sweep();
        if (!lane->advance()) continue;
      }
      next.push_back(lane);
    }
    active = std::move(next);
  }
}

}  // namespace

Spectrum all_eigenvalues(const TridiagonalMatrix& t, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<QlLane> lanes;
  lanes.emplace_back(t);
  solve_group(lanes);
  return finish(lanes.front());
}

std::vector<Spectrum> all_eigenvalues(std::span<const TridiagonalMatrix> batch, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<Spectrum> out;
  out.reserve(batch.size());
  for (std::size_t start = 0; start < batch.size(); start += kMaxLanes) {
    std::vector<QlLane> lanes;
    for (std::size_t j = start; j < std::min(batch.size(), start + kMaxLanes); ++j) {
      lanes.emplace_back(batch[j]);
    }
    solve_group(lanes);
    for (auto& lane : lanes) out.push_back(finish(lane));
  }
  return out;
}

Spectrum normalize(Spectrum raw) {
  if (raw.scale == Scale::kNormalized) return raw;
  const double inv = 1.0 / std::sqrt(static_cast<double>(raw.values.size()));
  for (double& v : raw.values) v *= inv;
  raw.scale = Scale::kNormalized;
  return raw;
}

}  // namespace wclt
