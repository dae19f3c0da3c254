// Copyright 2026 The uqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace uqc {

// Counter-based generator built on the SplitMix64 finalizer (Steele/Lea/Flood
// mixing constants, as popularised by Vigna's splitmix64.c). Output k of
// stream `seed` is
//
//     out(seed, k) = mix64(seed + (k + 1) * 0x9E3779B97F4A7C15)
//
// which is a pure function of (seed, k): the same draws come out on every
// platform and in any evaluation order. All randomness in the library
// (datasets, parameter init, shuffles, shot sampling) goes through this.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  /// SplitMix64 finalizer: an invertible 64-bit mix.
  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  /// Random-access form: output at position k of stream `seed`.
  static std::uint64_t value_at(std::uint64_t seed, std::uint64_t k) {
    return mix64(seed + (k + 1) * kGamma);
  }

  std::uint64_t next_u64() { return value_at(seed_, counter_++); }

  /// Uniform double in [0, 1), 53 significant bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  /// Uniform double in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  /// Uniform integer in [0, n), n > 0. Multiply-shift reduction (Lemire);
  /// the residual bias at 64 draw bits is far below anything observable.
  std::uint64_t next_below(std::uint64_t n) {
    const auto wide = static_cast<unsigned __int128>(next_u64()) * n;
    return static_cast<std::uint64_t>(wide >> 64);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Derives an independent child stream from a parent seed and up to two
/// integer tags. Used to key datasets, epochs, and per-program shot streams
/// so that parallel or reordered execution cannot change any draw.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  const std::uint64_t first = CounterRng::mix64(seed + (a + 1) * CounterRng::kGamma);
  return CounterRng::mix64(first + (b + 1) * CounterRng::kGamma);
}

/// Deterministic Fisher-Yates permutation of {0, ..., n-1}.
inline std::vector<std::uint32_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  CounterRng rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

}  // namespace uqc
