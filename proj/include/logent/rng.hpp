// Copyright (c) The logent Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace logent {

// Deterministic PRNG (xoshiro256** seeded through splitmix64).
// Not std::mt19937 + distributions: those are implementation-defined, and
// generated corpora must be byte-identical for a given seed everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, n). n == 0 returns 0.
  std::uint64_t below(std::uint64_t n);

  // Uniform double in [0, 1) with 53 random bits.
  double unit();

  bool chance(double p);

  // Exponential variate with the given rate (mean 1/rate).
  double exponential(double rate);

  // Independent substream derived from this generator's seed and a tag.
  // Forking does not consume state from the parent.
  Rng fork(std::string_view tag) const;

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

}  // namespace logent
