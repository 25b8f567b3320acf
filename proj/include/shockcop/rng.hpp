#pragma once

#include <cstdint>
#include <random>

namespace shockcop {

// Fixed mapping from engine output to doubles so that streams are identical
// across standard library implementations.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double a, double b) { return a + (b - a) * uniform01(rng); }

/// Uniform integer in [0, n).
inline std::uint64_t below(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(n)) % n;
}

}  // namespace shockcop
