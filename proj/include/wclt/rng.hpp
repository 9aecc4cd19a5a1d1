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

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace wclt {

/// SplitMix64 output finalizer (Stafford variant 13).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

/// Derives a child seed from a parent seed and a lane key (e.g. the matrix
/// order in a sweep, or an ensemble slot). Pure function of its inputs.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t lane) noexcept {
  return mix64(parent ^ mix64(lane + kGoldenGamma));
}

/// Identifies the random stream of one Monte Carlo replicate.
struct SeedStream {
  std::uint64_t master_seed = 0;
  std::uint64_t replicate_index = 0;

  /// Generator key: avalanche hash of (master, replicate).
  [[nodiscard]] constexpr std::uint64_t key() const noexcept {
    return mix64(mix64(master_seed) + kGoldenGamma * (replicate_index + 1));
  }
};

/// xoshiro256++ bit generator; satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Xoshiro256pp(std::uint64_t seed) noexcept {
    // Expand the 64-bit seed with a SplitMix64 sequence.
    std::uint64_t sm = seed;
    for (auto& word : s_) {
      sm += kGoldenGamma;
      word = mix64(sm);
    }
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

 private:
  std::array<std::uint64_t, 4> s_{};
};

/// Replicate-local random source. Owns the bit generator and the spare
/// deviate of the polar Gaussian method, so draws are a pure function of the
/// seed and the call sequence.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : bits_(seed) {}
  explicit Rng(const SeedStream& stream) noexcept : bits_(stream.key()) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>(bits_() >> 11) * 0x1.0p-53; }

  /// Uniform on (-1, 1).
  double uniform_symmetric() noexcept {
    return (static_cast<double>(bits_() >> 11) + 0.5) * 0x1.0p-52 - 1.0;
  }

  /// Standard normal via the Marsaglia polar method.
  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform_symmetric();
      v = uniform_symmetric();
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Gamma(shape, 1) for shape >= 1 (Marsaglia-Tsang squeeze).
  double gamma(double shape) noexcept {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      const double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  /// Chi with integer degrees of freedom k >= 1. Small k sums squared
  /// Gaussians; larger k goes through Gamma(k/2).
  double chi(unsigned dof) noexcept {
    if (dof <= kChiDirectMax) {
      double acc = 0.0;
      for (unsigned j = 0; j < dof; ++j) {
        const double z = normal();
        acc += z * z;
      }
      return std::sqrt(acc);
    }
    return std::sqrt(2.0 * gamma(0.5 * dof));
  }

  Xoshiro256pp& bits() noexcept { return bits_; }

  static constexpr unsigned kChiDirectMax = 64;

 private:
  Xoshiro256pp bits_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace wclt
