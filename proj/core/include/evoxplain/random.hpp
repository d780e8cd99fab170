#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace evoxplain {

/// Seeded generator whose draws are defined bit-for-bit on every platform.
/// (std:: distributions are implementation-defined, the engine is not.)
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Fair coin.
  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform() < p; }

  /// Uniform integer in [0, n); n must be > 0.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = n;
    // 2^64 mod bound; draws in the top `rem` values would bias the modulo.
    const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;
    std::uint64_t draw = engine_();
    while (rem != 0 && draw > UINT64_MAX - rem) draw = engine_();
    return static_cast<std::size_t>(draw % bound);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace evoxplain
