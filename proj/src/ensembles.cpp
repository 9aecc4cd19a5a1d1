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

#include "wclt/ensembles.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wclt {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kMomentTolerance = 1e-12;

}  // namespace

EntryDistribution::EntryDistribution(Kind kind) : kind_(kind) {
  // Even moments; odd moments stay zero for every supported law.
  std::visit(Overloaded{
                 [&](const GaussianReal& g) {
                   if (!(g.variance > 0.0)) throw std::invalid_argument("Gaussian variance must be > 0");
                   const double v = g.variance;
                   moments_[1] = v;
                   moments_[3] = 3.0 * v * v;
                   moments_[5] = 15.0 * v * v * v;
                 },
                 [&](const ThreePoint& t) {
                   if (!(t.atom > 0.0)) throw std::invalid_argument("three-point atom must be > 0");
                   if (!(t.atom_prob > 0.0 && t.atom_prob <= 0.5)) {
                     throw std::invalid_argument("three-point atom probability must lie in (0, 1/2]");
                   }
                   const double a2 = t.atom * t.atom;
                   moments_[1] = 2.0 * t.atom_prob * a2;
                   moments_[3] = 2.0 * t.atom_prob * a2 * a2;
                   moments_[5] = 2.0 * t.atom_prob * a2 * a2 * a2;
                 },
                 [&](const Rademacher& r) {
                   if (!(r.scale > 0.0)) throw std::invalid_argument("Rademacher scale must be > 0");
                   const double s2 = r.scale * r.scale;
                   moments_[1] = s2;
                   moments_[3] = s2 * s2;
                   moments_[5] = s2 * s2 * s2;
                 },
             },
             kind_);
}

double EntryDistribution::moment(int k) const {
  if (k < 1 || k > kMaxMoment) throw std::out_of_range("moment order must lie in [1, 6]");
  return moments_[k - 1];
}

double EntryDistribution::sample(Rng& rng) const noexcept {
  return std::visit(Overloaded{
                        [&](const GaussianReal& g) { return std::sqrt(g.variance) * rng.normal(); },
                        [&](const ThreePoint& t) {
                          const double u = rng.uniform();
                          if (u < t.atom_prob) return t.atom;
                          if (u < 2.0 * t.atom_prob) return -t.atom;
                          return 0.0;
                        },
                        [&](const Rademacher& r) {
                          return (rng.bits()() >> 63) != 0 ? r.scale : -r.scale;
                        },
                    },
                    kind_);
}

std::string EntryDistribution::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(Overloaded{
                 [&](const GaussianReal& g) { os << "Gaussian(0, " << g.variance << ")"; },
                 [&](const ThreePoint& t) { os << "ThreePoint(+-" << t.atom << ", p=" << t.atom_prob << ")"; },
                 [&](const Rademacher& r) { os << "Rademacher(+-" << r.scale << ")"; },
             },
             kind_);
  return os.str();
}

EnsembleSpec EnsembleSpec::gue(std::size_t n) {
  return EnsembleSpec{2, EntryDistribution{GaussianReal{0.5}}, EntryDistribution{GaussianReal{1.0}}, n};
}

EnsembleSpec EnsembleSpec::goe(std::size_t n) {
  return EnsembleSpec{1, EntryDistribution{GaussianReal{1.0}}, EntryDistribution{GaussianReal{2.0}}, n};
}

EnsembleSpec EnsembleSpec::gue_matched_three_point(std::size_t n) {
  return EnsembleSpec{2, wclt::gue_matched_three_point(0.5), wclt::gue_matched_three_point(1.0), n};
}

EnsembleSpec EnsembleSpec::rademacher(std::size_t n) {
  return EnsembleSpec{2, EntryDistribution{Rademacher{std::sqrt(0.5)}},
                      EntryDistribution{Rademacher{1.0}}, n};
}

HermitianMatrix sample_dense(const EnsembleSpec& spec, Rng& rng) {
  if (spec.n == 0) throw std::invalid_argument("matrix order must be >= 1");
  HermitianMatrix m(spec.n, spec.beta);
  for (std::size_t i = 0; i < spec.n; ++i) {
    m.set(i, i, spec.diag.sample(rng));
    for (std::size_t j = i + 1; j < spec.n; ++j) {
      const double re = spec.off_diag_part.sample(rng);
      const double im = spec.beta == 2 ? spec.off_diag_part.sample(rng) : 0.0;
      m.set(i, j, {re, im});
    }
  }
  return m;
}

HermitianMatrix sample_dense(const EnsembleSpec& spec, const SeedStream& stream) {
  Rng rng(stream);
  return sample_dense(spec, rng);
}

TridiagonalMatrix sample_tridiagonal_beta(std::size_t n, int beta, Rng& rng) {
  if (beta != 1 && beta != 2) throw std::invalid_argument("beta must be 1 or 2");
  if (n == 0) throw std::invalid_argument("matrix order must be >= 1");
  std::vector<double> diag(n);
  std::vector<double> subdiag(n - 1);
  // beta = 2: a ~ N(0, 1), b_i ~ chi_{2(n-i)} / sqrt(2).
  // beta = 1: a ~ N(0, 2), b_i ~ chi_{n-i}.
  const double diag_sd = beta == 2 ? 1.0 : std::sqrt(2.0);
  const double sub_scale = beta == 2 ? std::sqrt(0.5) : 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    diag[i] = diag_sd * rng.normal();
    if (i + 1 < n) {
      const auto dof = static_cast<unsigned>(static_cast<std::size_t>(beta) * (n - 1 - i));
      subdiag[i] = sub_scale * rng.chi(dof);
    }
  }
  return TridiagonalMatrix(std::move(diag), std::move(subdiag));
}

TridiagonalMatrix sample_tridiagonal_beta(std::size_t n, int beta, const SeedStream& stream) {
  Rng rng(stream);
  return sample_tridiagonal_beta(n, beta, rng);
}

EntryDistribution gue_matched_three_point(double target_variance) {
  if (!(target_variance > 0.0)) throw std::invalid_argument("target variance must be > 0");
  return EntryDistribution{ThreePoint{std::sqrt(3.0 * target_variance), 1.0 / 6.0}};
}

MatchReport verify_moment_match(const EntryDistribution& lhs, const EntryDistribution& rhs,
                                int order) {
  if (order < 1 || order > EntryDistribution::kMaxMoment) {
    throw std::invalid_argument("match order must lie in [1, 6]");
  }
  MatchReport report;
  report.order = order;
  auto lm = [&](int k) { return k == 0 ? 1.0 : lhs.moment(k); };
  auto rm = [&](int k) { return k == 0 ? 1.0 : rhs.moment(k); };
  for (int k = 1; k <= order; ++k) {
    const MomentComparison c{k, lm(k), rm(k), std::abs(lm(k) - rm(k)) <= kMomentTolerance};
    if (!c.equal && report.first_mismatch == 0) report.first_mismatch = k;
    report.moments.push_back(c);
  }
  for (int total = 1; total <= order; ++total) {
    for (int m = total; m >= 0; --m) {
      const int l = total - m;
      const double a = lm(m) * lm(l);
      const double b = rm(m) * rm(l);
      report.mixed.push_back(MixedMoment{m, l, a, b, std::abs(a - b) <= kMomentTolerance});
    }
  }
  report.matched = report.first_mismatch == 0;
  return report;
}

}  // namespace wclt
