#pragma once

#include <cstdint>

namespace cotlab {

// SplitMix64 (Steele, Lea, Flood / Vigna). Counter-based 64-bit generator;
// test vectors are pinned in the unit tests and listed in the README.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection; bound must be positive.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = bound * (UINT64_MAX / bound);
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  // Uniform integer in [lo, hi] inclusive.
  int64_t in_range(int64_t lo, int64_t hi) {
    return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
  }
};

}  // namespace cotlab
