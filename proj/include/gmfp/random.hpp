#pragma once

#include <cstdint>
#include <random>

namespace gmfp {

/// Seeded engine for every sampled check. mt19937_64 output is fully
/// specified by the standard; the helpers below avoid the
/// implementation-defined std distributions so reports reproduce bit-exactly.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi].
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return rng();  // full 64-bit range
  return lo + rng() % span;
}

}  // namespace gmfp
