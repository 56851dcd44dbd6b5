// Copyright 2026 The ghzcert Authors
// SPDX-License-Identifier: Apache-2.0

// Counter-based random streams: every draw is a pure function of
// (seed, index, purpose), so parallel and serial loops see the same numbers.

#pragma once

#include <cstdint>

namespace ghzcert {

enum class RngPurpose : std::uint64_t {
  kRound = 1,
  kHoldOut = 2,
  kBlock = 3,
  kStrictSelect = 4,
  kShuffle = 5,
  kTermPosterior = 6,
  kSynthesis = 7,
};

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// SplitMix64 stream whose state is derived from the key triple.
class KeyedRng {
 public:
  KeyedRng(std::uint64_t seed, std::uint64_t index, RngPurpose purpose)
      : state_(splitmix64(seed ^ splitmix64(index ^ splitmix64(static_cast<std::uint64_t>(purpose))))) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ghzcert
