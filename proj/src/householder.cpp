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
#include <cstddef>
#include <vector>

#include "wclt/spectral.hpp"

namespace wclt {

namespace {

// Lower-triangle reduction on planar (split real/imaginary) column-major
// storage. Each step applies A22 <- H^H A22 H with H = I - tau v v^H chosen so
// that H^H maps the current column onto beta e_1 with beta real. The
// subdiagonal is recorded as |beta|, which is a diagonal unitary similarity.
template <bool kComplex>
TridiagonalMatrix reduce_lower(const HermitianMatrix& h) {
  const std::size_t n = h.size();
  std::vector<double> re(n * n, 0.0);
  std::vector<double> im(kComplex ? n * n : 0, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      const auto value = h(i, j);
      re[i + j * n] = value.real();
      if constexpr (kComplex) im[i + j * n] = value.imag();
    }
  }

  std::vector<double> diag(n);
  std::vector<double> subdiag(n > 0 ? n - 1 : 0);
  std::vector<double> vr(n), vi(n), wr(n), wi(n);

  for (std::size_t k = 0; k + 1 < n; ++k) {
    diag[k] = re[k + k * n];
    const std::size_t m = n - k - 1;
    const double* xr = &re[(k + 1) + k * n];
    const double* xi = kComplex ? &im[(k + 1) + k * n] : nullptr;

    const double ar = xr[0];
    const double ai = kComplex ? xi[0] : 0.0;
    double tail2 = 0.0;
    for (std::size_t p = 1; p < m; ++p) {
      tail2 += xr[p] * xr[p];
      if constexpr (kComplex) tail2 += xi[p] * xi[p];
    }
    if (tail2 == 0.0) {
      subdiag[k] = std::hypot(ar, ai);
      continue;
    }

    const double beta = -std::copysign(std::sqrt(ar * ar + ai * ai + tail2), ar);
    const double tau_r = (beta - ar) / beta;
    const double tau_i = -ai / beta;
    // v = x / (alpha - beta), v_0 = 1.
    const double den_r = ar - beta;
    const double den_i = ai;
    const double den2 = den_r * den_r + den_i * den_i;
    const double inv_r = den_r / den2;
    const double inv_i = -den_i / den2;
    vr[0] = 1.0;
    vi[0] = 0.0;
    for (std::size_t p = 1; p < m; ++p) {
      if constexpr (kComplex) {
        vr[p] = xr[p] * inv_r - xi[p] * inv_i;
        vi[p] = xr[p] * inv_i + xi[p] * inv_r;
      } else {
        vr[p] = xr[p] * inv_r;
      }
    }
    subdiag[k] = std::abs(beta);

    // w = A22 v using the lower triangle only.
    double* const a22r = &re[(k + 1) + (k + 1) * n];
    double* const a22i = kComplex ? &im[(k + 1) + (k + 1) * n] : nullptr;
    for (std::size_t p = 0; p < m; ++p) {
      wr[p] = 0.0;
      wi[p] = 0.0;
    }
    for (std::size_t q = 0; q < m; ++q) {
      const double* __restrict cr = a22r + q * n;
      const double vqr = vr[q];
      const double vqi = kComplex ? vi[q] : 0.0;
      double* __restrict wr_ = wr.data();
      const double* __restrict vr_ = vr.data();
      double sr = cr[q] * vqr;
      double si = cr[q] * vqi;
      if constexpr (kComplex) {
        const double* __restrict ci = a22i + q * n;
        double* __restrict wi_ = wi.data();
        const double* __restrict vi_ = vi.data();
#pragma omp simd reduction(+ : sr, si)
        for (std::size_t p = q + 1; p < m; ++p) {
          const double a_r = cr[p];
          const double a_i = ci[p];
          wr_[p] += a_r * vqr - a_i * vqi;
          wi_[p] += a_r * vqi + a_i * vqr;
          // conj(a) * v_p
          sr += a_r * vr_[p] + a_i * vi_[p];
          si += a_r * vi_[p] - a_i * vr_[p];
        }
      } else {
#pragma omp simd reduction(+ : sr)
        for (std::size_t p = q + 1; p < m; ++p) {
          const double a_r = cr[p];
          wr_[p] += a_r * vqr;
          sr += a_r * vr_[p];
        }
      }
      wr[q] += sr;
      wi[q] += si;
    }
    // w = tau * w
    for (std::size_t p = 0; p < m; ++p) {
      const double tr = wr[p];
      const double ti = wi[p];
      wr[p] = tau_r * tr - tau_i * ti;
      wi[p] = tau_r * ti + tau_i * tr;
    }
    // w += -1/2 tau (w^H v) v
    double dot_r = 0.0;
    double dot_i = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
      dot_r += wr[p] * vr[p] + wi[p] * vi[p];
      dot_i += wr[p] * vi[p] - wi[p] * vr[p];
    }
    const double c_r = -0.5 * (tau_r * dot_r - tau_i * dot_i);
    const double c_i = -0.5 * (tau_r * dot_i + tau_i * dot_r);
    for (std::size_t p = 0; p < m; ++p) {
      const double pr = vr[p];
      const double pi = vi[p];
      wr[p] += c_r * pr - c_i * pi;
      wi[p] += c_r * pi + c_i * pr;
    }

    // A22 -= v w^H + w v^H (lower triangle).
    for (std::size_t q = 0; q < m; ++q) {
      double* __restrict cr = a22r + q * n;
      const double* __restrict vr_ = vr.data();
      const double* __restrict wr_ = wr.data();
      const double wqr = wr[q];
      const double vqr = vr[q];
      if constexpr (kComplex) {
        double* __restrict ci = a22i + q * n;
        const double* __restrict vi_ = vi.data();
        const double* __restrict wi_ = wi.data();
        const double wqi = wi[q];
        const double vqi = vi[q];
#pragma omp simd
        for (std::size_t p = q; p < m; ++p) {
          // v_p conj(w_q) + w_p conj(v_q)
          cr[p] -= vr_[p] * wqr + vi_[p] * wqi + wr_[p] * vqr + wi_[p] * vqi;
          ci[p] -= vi_[p] * wqr - vr_[p] * wqi + wi_[p] * vqr - wr_[p] * vqi;
        }
        ci[q] = 0.0;
      } else {
#pragma omp simd
        for (std::size_t p = q; p < m; ++p) {
          cr[p] -= vr_[p] * wqr + wr_[p] * vqr;
        }
      }
    }
  }
  diag[n - 1] = re[(n - 1) + (n - 1) * n];
  return TridiagonalMatrix(std::move(diag), std::move(subdiag));
}

}  // namespace

TridiagonalMatrix householder_tridiagonalize(const HermitianMatrix& h) {
  return h.beta() == 2 ? reduce_lower<true>(h) : reduce_lower<false>(h);
}

}  // namespace wclt
