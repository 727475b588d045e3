// Copyright 2026 The chronoq Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

namespace chronoq {

/// Deterministic random source keyed by (seed, stream).
///
/// Draws are produced by a 64-bit Mersenne Twister seeded from a splitmix64
/// expansion of the key. Uniform and normal variates are derived here rather
/// than through <random> distributions so that sequences do not depend on the
/// standard library vendor.
class RandomSource {
 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  /// Raw 64-bit draw.
  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [0, n). Requires n > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal (Box-Muller, cached pair).
  double normal();
  /// True with probability p.
  bool bernoulli(double p);
  /// Index drawn from non-negative weights that sum to ~1.
  std::size_t categorical(const double* weights, std::size_t count);

  /// Independent child source for a sub-stream, e.g. one trial.
  RandomSource derive(std::uint64_t sub_stream) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finaliser; also used as the toy block digest.
std::uint64_t splitmix64_mix(std::uint64_t x);

}  // namespace chronoq
