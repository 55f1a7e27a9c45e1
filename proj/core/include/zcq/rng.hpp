#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace zcq {

// splitmix64 finalizer.
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-based generator: every draw is a pure function of (seed, stream,
// counter), so parallel consumers can draw in any order and still reproduce
// bit-identical results. Streams are cheap; use one per independent purpose.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const {
    return mix64(mix64(mix64(seed) ^ stream) ^ counter);
  }
  // Uniform on (0,1), never exactly 0 or 1.
  double uniform(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53 + 0x1.0p-54;
  }
  // Standard normal via Box-Muller; consumes counters 2c and 2c+1 of the stream.
  double normal(std::uint64_t stream, std::uint64_t counter) const {
    double u1 = uniform(stream, 2 * counter);
    double u2 = uniform(stream, 2 * counter + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  // Uniform integer in [0, bound) by rejection-free multiply-shift; bias is
  // below 2^-32 for bound < 2^32, fine for simulation use.
  std::uint64_t below(std::uint64_t bound, std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits(stream, counter)) *
                                       bound) >> 64);
  }
};

}  // namespace zcq
