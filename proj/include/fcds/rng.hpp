#pragma once

#include <cstdint>

namespace fcds {

/** SplitMix64 stream. 8 bytes of state, so every node of a simulation can
 *  own an independent stream; all draws of a run derive from (seed, tag,
 *  index) and are therefore independent of iteration order.
 */
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double nextDouble() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), n >= 1. Lemire multiply-shift with rejection.
  uint64_t nextBelow(uint64_t n) {
    uint64_t x = next();
    __uint128_t m = static_cast<__uint128_t>(x) * n;
    auto lo = static_cast<uint64_t>(m);
    if (lo < n) {
      const uint64_t threshold = -n % n;
      while (lo < threshold) {
        x = next();
        m = static_cast<__uint128_t>(x) * n;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return nextDouble() < p; }

private:
  uint64_t state_;
};

inline uint64_t hashMix(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Named sub-stream tags. Keeping them public lets tests reproduce the exact
/// stream any simulation phase used.
enum class SeedTag : uint64_t {
  Graph = 1,
  Sources = 2,
  Walk = 3,
  Control = 4,
  Payload = 5,
  PrecodeWalk = 6,
  PrecodeControl = 7,
  Precode = 8,
  InnerCode = 9,
  Trial = 10,
  Query = 11,
};

inline uint64_t deriveSeed(uint64_t seed, uint64_t a, uint64_t b = 0) {
  uint64_t h = hashMix(seed ^ 0x5851f42d4c957f2dull);
  h = hashMix(h ^ a);
  if (b != 0) h = hashMix(h ^ (b * 0xda942042e4dd58b5ull));
  return h;
}

inline uint64_t deriveSeed(uint64_t seed, SeedTag tag, uint64_t b = 0) {
  return deriveSeed(seed, static_cast<uint64_t>(tag) * 0x2545f4914f6cdd1dull, b);
}

}  // namespace fcds
