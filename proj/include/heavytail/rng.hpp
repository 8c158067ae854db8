// Copyright (c) 2026 the heavytail authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>

namespace heavytail {

namespace detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// SplitMix64 finalizer (Steele/Lea/Flood; Vigna's public-domain constants).
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

}  // namespace detail

/// Counter-based 64-bit generator: the i-th output is a bijective mix of
/// (key + i*golden), so a stream is fully determined by its key and
/// position. Satisfies UniformRandomBitGenerator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<std::uint64_t>::max(); }

  constexpr result_type operator()() {
    counter_ += detail::kGolden;
    return detail::mix64(key_ + counter_);
  }

  /// Uniform double in the half-open interval [0, 1), 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform double in the open interval (0, 1); never returns 0 or 1,
  /// safe to feed into log() and inverse-CDF transforms.
  double uniform_open() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

/// Derives the key of sub-stream `index` from a master seed. Two rounds of
/// the finalizer decorrelate (seed, index) pairs, so parallel shards drawn
/// from distinct indices never overlap in practice.
inline constexpr std::uint64_t derive_stream(std::uint64_t master_seed, std::uint64_t index) {
  return detail::mix64(master_seed ^ detail::mix64(index + detail::kGolden));
}

inline CounterRng make_rng(std::uint64_t seed) { return CounterRng(detail::mix64(seed)); }

inline CounterRng make_stream_rng(std::uint64_t master_seed, std::uint64_t index) {
  return CounterRng(derive_stream(master_seed, index));
}

}  // namespace heavytail
