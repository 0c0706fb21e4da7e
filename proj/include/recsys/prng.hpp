#pragma once

#include <cstdint>

namespace recsys {

// SplitMix64: a 64-bit Weyl sequence with avalanche mixing. Every shuffle,
// initialization draw and per-query hash in this project goes through this
// generator, so seeded results are reproducible across platforms and
// standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform in [0,n) by 128-bit multiply-shift (Lemire reduction, unbiased
  // enough for shuffling; n is tiny compared to 2^64 everywhere we use it).
  std::uint64_t bounded(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t state_;
};

// Stateless avalanche mix of (seed, a, b); counter-based randomness for
// predictors that must answer repeated queries identically.
inline std::uint64_t hash_mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(seed + 0x9e3779b97f4a7c15ULL);
  h = mix(h ^ (a + 0x9e3779b97f4a7c15ULL));
  h = mix(h ^ (b + 0x9e3779b97f4a7c15ULL));
  return h;
}

}  // namespace recsys
