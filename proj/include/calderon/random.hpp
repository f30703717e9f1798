#pragma once

#include <cstdint>
#include <random>

namespace calderon {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `master`; independent of the order trials run in.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index + 1));
}

using Rng = std::mt19937_64;

/// Uniform on [0, 1) with 53-bit resolution; portable across standard libraries.
inline double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on [lo, hi] (inclusive), portable across standard libraries.
inline long uniform_int(Rng& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

/// Dyadic value k / 2^bits with k uniform in [-2^bits, 2^bits].
inline double dyadic_unit(Rng& rng, int bits) {
  const long scale = 1L << bits;
  return static_cast<double>(uniform_int(rng, -scale, scale)) / static_cast<double>(scale);
}

} // namespace calderon
