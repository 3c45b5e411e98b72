#pragma once

#include <cstdint>

namespace symmlab {

// Deterministic, platform-independent generator (splitmix64). All randomness
// in the library and test sweeps flows through this so runs are replayable
// from a single seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Symmetric, roughly bell-shaped variate in (-3, 3) (sum of uniforms).
  double gaussish() {
    return uniform(-1.0, 1.0) + uniform(-1.0, 1.0) + uniform(-1.0, 1.0);
  }

 private:
  std::uint64_t state_;
};

}  // namespace symmlab
