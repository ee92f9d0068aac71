#pragma once

#include <cstdint>
#include <random>

#include "sofup/statespace.hpp"

namespace sofup {

/// splitmix64 finalizer; used to fold stream keys into one engine seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// A random stream keyed by (seed, a, b). Two streams with equal keys produce
/// identical draws on every platform: the engine is mt19937_64 and the
/// uniform/normal transforms are implemented here rather than taken from
/// <random>'s implementation-defined distributions.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0)
      : engine_(mix64(mix64(mix64(seed) ^ a) ^ (b + 0x632BE59BD9B4E019ull))) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; no cached second variate.
  double normal();

  /// Uniform direction on the unit sphere of R^dim (dim may be 0).
  Vector unit_vector(Index dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sofup
