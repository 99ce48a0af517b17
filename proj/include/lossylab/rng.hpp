#pragma once

#include <cstdint>

namespace lossylab {

// Splittable counter-style generator (splitmix64). State is a value, never
// shared; split() derives an independent stream so seeded pipelines can hand
// out sub-seeds deterministically.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, bound) via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    for (;;) {
      std::uint64_t u = next();
      if (u < limit) return u % bound;
    }
  }

  SplitMix64 split() { return SplitMix64(next() ^ 0x5851f42d4c957f2dULL); }
};

}  // namespace lossylab
