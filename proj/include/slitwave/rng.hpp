#pragma once

#include <cstdint>

namespace slitwave {

// Counter-based generator: every draw is a pure function of (seed, counter),
// so Monte-Carlo sample j can be produced by any worker in any order with
// identical results.  Mixing function is the splitmix64 finalizer.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(counter_hash(seed, counter) >> 11) * 0x1.0p-53;
}

}  // namespace slitwave
