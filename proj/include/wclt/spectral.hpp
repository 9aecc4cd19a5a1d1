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

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace wclt {

/// Real symmetric tridiagonal matrix in canonical form: finite entries and a
/// nonnegative subdiagonal.
class TridiagonalMatrix {
 public:
  TridiagonalMatrix() = default;

  /// Throws std::invalid_argument on size mismatch, non-finite entries or a
  /// negative subdiagonal entry.
  TridiagonalMatrix(std::vector<double> diag, std::vector<double> subdiag);

  /// Builds the canonical form from an arbitrary-sign subdiagonal. Flipping
  /// signs is a diagonal orthogonal similarity, so the spectrum is unchanged.
  static TridiagonalMatrix canonical(std::vector<double> diag, std::vector<double> subdiag);

  [[nodiscard]] std::size_t size() const noexcept { return diag_.size(); }
  [[nodiscard]] std::span<const double> diag() const noexcept { return diag_; }
  [[nodiscard]] std::span<const double> subdiag() const noexcept { return subdiag_; }

  /// max_i (|a_i| + b_{i-1} + b_i).
  [[nodiscard]] double norm_inf() const noexcept { return norm_inf_; }

  /// Gershgorin enclosure [lo, hi] of the spectrum.
  [[nodiscard]] std::pair<double, double> gershgorin_bounds() const noexcept;

 private:
  std::vector<double> diag_;
  std::vector<double> subdiag_;
  double norm_inf_ = 0.0;
};

/// Hermitian (beta = 2) or real symmetric (beta = 1) matrix, stored as the
/// packed upper triangle in column-major order. Reads below the diagonal
/// return the conjugate, so the matrix equals its conjugate transpose exactly.
class HermitianMatrix {
 public:
  using value_type = std::complex<double>;

  HermitianMatrix(std::size_t n, int beta);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] int beta() const noexcept { return beta_; }

  [[nodiscard]] value_type operator()(std::size_t i, std::size_t j) const noexcept {
    return i <= j ? packed_[index(i, j)] : std::conj(packed_[index(j, i)]);
  }

  /// Sets entry (i, j) and, implicitly, its mirror. Diagonal entries must be
  /// real; for beta = 1 every entry must be real.
  void set(std::size_t i, std::size_t j, value_type value);

  [[nodiscard]] std::span<const value_type> packed() const noexcept { return packed_; }

 private:
  [[nodiscard]] static std::size_t index(std::size_t i, std::size_t j) noexcept {
    return j * (j + 1) / 2 + i;
  }

  std::size_t n_;
  int beta_;
  std::vector<value_type> packed_;
};

enum class Scale { kRaw, kNormalized };

/// Eigenvalues in ascending order. Normalized spectra are those of M/sqrt(n).
struct Spectrum {
  std::vector<double> values;
  Scale scale = Scale::kRaw;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Default bisection/QL tolerance for an order-n unnormalized matrix, which
/// is 1e-10 once divided by sqrt(n).
[[nodiscard]] double default_tolerance(std::size_t n) noexcept;

/// Unitary (beta = 2) or orthogonal (beta = 1) reduction to tridiagonal form.
/// Columns that are already reduced are skipped rather than reflected.
[[nodiscard]] TridiagonalMatrix householder_tridiagonalize(const HermitianMatrix& h);

/// Number of eigenvalues strictly below y, from the signs of the LDL^T pivots
/// of T - yI. Pivots smaller than eps*|T| are replaced by -eps*|T|.
[[nodiscard]] std::size_t negcount(const TridiagonalMatrix& t, double y) noexcept;

/// N_[y, inf): eigenvalues >= y. With Scale::kNormalized the eigenvalues are
/// those of T/sqrt(n), so the shift passed to negcount is y*sqrt(n).
[[nodiscard]] std::size_t counting_function(const TridiagonalMatrix& t, double y, Scale scale) noexcept;

/// The i-th smallest eigenvalue (1-based) to within tol, by bisection on
/// negcount from the Gershgorin bracket with a fixed iteration count.
[[nodiscard]] double kth_eigenvalue(const TridiagonalMatrix& t, std::size_t i, double tol);

/// All eigenvalues, ascending, via root-free implicit QL. Throws
/// NumericalError if the sweep budget (30 per eigenvalue) runs out.
[[nodiscard]] Spectrum all_eigenvalues(const TridiagonalMatrix& t, double tol);

/// Batched all_eigenvalues: up to four matrices are iterated in lockstep.
/// Each result is bit-identical to the single-matrix call.
[[nodiscard]] std::vector<Spectrum> all_eigenvalues(std::span<const TridiagonalMatrix> batch,
                                                    double tol);

/// Divides every eigenvalue of a raw spectrum by sqrt(n).
[[nodiscard]] Spectrum normalize(Spectrum raw);

}  // namespace wclt
