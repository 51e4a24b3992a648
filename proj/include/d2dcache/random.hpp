#pragma once

#include <cstdint>
#include <random>

namespace d2dcache {

// Seeded random stream. Conversions to real and bounded integers are done
// here rather than with <random> distributions so that a given seed yields the
// same numbers on every standard library.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for work unit `index` of a run seeded with `master`.
  // Depends only on (master, index), never on scheduling.
  static RandomStream derive(std::uint64_t master, std::uint64_t index) {
    return RandomStream(mix(mix(master) ^ (index + 0x9e3779b97f4a7c15ULL)));
  }

  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., bound - 1}; bound must be positive. Rejection keeps it
  // exactly uniform.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace d2dcache
