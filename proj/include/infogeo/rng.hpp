#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace infogeo {

/// SplitMix64 counter generator. Chosen over std::mt19937 for the samplers
/// because per-sample streams keyed on (seed, index) stay bit-reproducible
/// no matter how draws are scheduled.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe as a log argument.
  double next_open() {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform in [-half_width, half_width).
  double next_symmetric(double half_width) {
    return (2.0 * next_double() - 1.0) * half_width;
  }
};

/// Stream key for sample `index` under `seed`: each index gets an
/// uncorrelated generator state.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
  return mixer.next();
}

/// One Box-Muller pair of independent standard normals.
inline void standard_normal_pair(SplitMix64& rng, double& z0, double& z1) {
  const double u1 = rng.next_open();
  const double u2 = rng.next_double();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  z0 = r * std::cos(phi);
  z1 = r * std::sin(phi);
}

}  // namespace infogeo
