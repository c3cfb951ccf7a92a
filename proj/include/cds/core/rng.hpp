#pragma once

#include <cstdint>
#include <random>

namespace cds {

// Explicit seeded random source. mt19937_64 output is fixed by the standard,
// and the conversions below are done by hand, so draws are reproducible
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform() {
    ++draws_;
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n) by rejection; n must be > 0.
  std::uint64_t index(std::uint64_t n) {
    ++draws_;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Number of uniform()/index() calls served so far.
  std::uint64_t draws() const { return draws_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t draws_ = 0;
};

}  // namespace cds
