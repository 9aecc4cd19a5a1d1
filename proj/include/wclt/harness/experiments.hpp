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
#include <vector>

#include "wclt/harness/config.hpp"
#include "wclt/harness/report.hpp"
#include "wclt/rng.hpp"
#include "wclt/spectral.hpp"

namespace wclt {

/// Per-replicate stream for (ensemble, n, replicate). Distinct ensembles and
/// orders get unrelated streams under the same master seed.
[[nodiscard]] SeedStream replicate_stream(std::uint64_t master_seed, EnsembleId ensemble,
                                          std::size_t n, std::size_t replicate) noexcept;

/// Draws one matrix of the ensemble and returns its (unnormalized)
/// tridiagonal form; dense ensembles go through Householder reduction.
[[nodiscard]] TridiagonalMatrix sample_model(EnsembleId ensemble, std::size_t n, Rng& rng);

/// Y_n = N_[y, inf)(W_n) for every replicate, in replicate order.
[[nodiscard]] std::vector<double> sample_counts(const ExperimentConfig& config, EnsembleId ensemble,
                                                std::size_t n);

/// Merges two ascending spectra and keeps positions 2, 4, ... (1-based) of
/// the merged sequence.
[[nodiscard]] std::vector<double> even_superposition(std::span<const double> a,
                                                     std::span<const double> b);

/// Moments of Y_n per n, theory-normalized z-scores and a mean check.
[[nodiscard]] ExperimentReport run_counting(const ExperimentConfig& config);

/// OLS of Var(Y_n) against ln n over a geometric n sweep (at least 3 orders).
[[nodiscard]] ExperimentReport run_variance_slope(const ExperimentConfig& config);

/// KS of empirically and theoretically standardized Y_n against Phi. Needs
/// at least 5000 replicates; throws InsufficientDataError otherwise.
[[nodiscard]] ExperimentReport run_clt(const ExperimentConfig& config);

/// Distribution of the bulk eigenvalue lambda_i (index from config, default
/// n/2) against its Gaussian approximation.
[[nodiscard]] ExperimentReport run_fluctuation(const ExperimentConfig& config);

/// Deviation of every bulk eigenvalue from its classical location.
[[nodiscard]] ExperimentReport run_rigidity(const ExperimentConfig& config);

/// even(GOE_n u GOE_{n+1}) against GUE_n, with GOE_n u GOE_n as the negative
/// control.
[[nodiscard]] ExperimentReport run_interlacing(const ExperimentConfig& config);

/// Compares Y_n between config.ensemble and config.reference at equal n.
[[nodiscard]] ExperimentReport run_universality(const ExperimentConfig& config);

}  // namespace wclt
