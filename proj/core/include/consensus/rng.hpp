#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "consensus/error.hpp"

namespace consensus {

// All randomness flows through std::mt19937_64 seeded explicitly, with the
// raw 64-bit output mapped to distributions by the helpers below.  The
// standard pins down mt19937_64's output exactly, and none of these mappings
// involve libstdc++'s unspecified distribution adaptors, so every sampled
// value is bit-identical across platforms and compilers.

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives an independent sub-stream seed, e.g. per sample index or per
// training generation.  Chaining mix_seed(mix_seed(seed, tag), index) keeps
// streams decorrelated without coordinating counters across call sites.
inline constexpr std::uint64_t mix_seed(std::uint64_t seed,
                                        std::uint64_t stream) noexcept {
  return splitmix64(splitmix64(seed) ^
                    (stream + 0x9E3779B97F4A7C15ull));
}

inline std::mt19937_64 make_engine(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

// Uniform double in [0, 1): top 53 bits scaled by 2^-53.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform double in the open interval (0, 1); safe to pass to log().
inline double uniform01_open(std::mt19937_64& eng) {
  return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_range(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// Standard normal via the cosine branch of Box-Muller.  One variate per two
// uniforms; the sine branch is discarded to keep the draw sequence simple.
inline double standard_normal(std::mt19937_64& eng) {
  const double u1 = uniform01_open(eng);
  const double u2 = uniform01(eng);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

inline double lognormal_sample(std::mt19937_64& eng, double mu, double sigma) {
  return std::exp(mu + sigma * standard_normal(eng));
}

// Inverse-CDF exponential with the given mean.
inline double exponential_sample(std::mt19937_64& eng, double mean) {
  return -mean * std::log1p(-uniform01(eng));
}

// Binomial(trials, p) as explicit Bernoulli counting.
inline double binomial_sample(std::mt19937_64& eng, int trials, double p) {
  int hits = 0;
  for (int t = 0; t < trials; ++t) {
    if (uniform01(eng) < p) ++hits;
  }
  return static_cast<double>(hits);
}

// Unbiased integer in [0, n) by Lemire's multiply-shift rejection.
inline std::uint64_t uniform_below(std::mt19937_64& eng, std::uint64_t n) {
  if (n == 0) raise(Errc::invalid_params, "uniform_below: n must be positive");
  std::uint64_t x = eng();
  __uint128_t m = static_cast<__uint128_t>(x) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (lo < threshold) {
      x = eng();
      m = static_cast<__uint128_t>(x) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

}  // namespace consensus
