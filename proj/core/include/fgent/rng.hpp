// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random-number utilities shared by the Monte Carlo sampler
// and the identity-sweep case generator.  Every draw is a fixed function of
// the underlying mt19937_64 stream — no <random> distributions, whose
// outputs are implementation-defined — so results are bit-identical across
// standard libraries and platforms.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fgent {

/// SplitMix64 mixing step: advances `state` and returns a well-mixed
/// 64-bit value.  Used to derive independent stream seeds from a user
/// seed plus integer labels (identity index, worker index, ...).
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Seed for logical stream `worker` of a run keyed by `seed`.  Streams are
/// a pure function of (seed, worker), independent of how many OS threads
/// execute them.
inline std::uint64_t stream_seed(std::uint64_t seed, unsigned worker) {
  std::uint64_t s = seed ^ (0x100000001b3ull * (static_cast<std::uint64_t>(worker) + 1));
  return splitmix64(s);
}

/// mt19937_64-backed generator with explicit uniform and Gaussian draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; caches the second variate of each pair.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 == 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fgent
