#pragma once

#include <cstdint>
#include <random>

namespace sqdiff {

// Reproducible generator: std::mt19937_64, whose output sequence is fixed by
// the standard.  The standard distributions are implementation defined, so
// the mappings to ranges are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [lo, hi], rejection sampled.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo;
    if (span == UINT64_MAX) return next();
    const std::uint64_t range = span + 1;
    // 2^64 mod range values at the bottom would bias the remainder.
    const std::uint64_t threshold = (0 - range) % range;
    std::uint64_t x = next();
    while (x < threshold) x = next();
    return lo + x % range;
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(uniform(0, static_cast<std::uint64_t>(hi - lo)));
  }

  // 53-bit uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sqdiff
