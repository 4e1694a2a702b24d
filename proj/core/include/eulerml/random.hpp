#ifndef EULERML_RANDOM_HPP
#define EULERML_RANDOM_HPP

#include <cstdint>
#include <numbers>
#include <random>

#include "eulerml/coeffs.hpp"

namespace eulerml {

/// Seeded random source. Samplers are hand-rolled on top of the raw mt19937_64
/// stream so draws are identical across standard library implementations.
class RandomSource {
public:
  explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

  /// Uniform integer in [lo, hi], by rejection on the raw 64-bit stream.
  long uniformInt(long lo, long hi) {
    if (lo > hi) throw ValueError("empty integer range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do {
      draw = gen_();
    } while (draw >= limit);
    return lo + static_cast<long>(draw % span);
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double real01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Uniform point on the complex unit circle.
  Cplx unitComplex() {
    double angle = 2.0 * std::numbers::pi * real01();
    return Cplx(std::cos(angle), std::sin(angle));
  }

private:
  std::mt19937_64 gen_;
};

} // namespace eulerml

#endif
