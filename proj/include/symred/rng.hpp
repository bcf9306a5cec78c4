#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>

namespace symred {

using Rng = std::mt19937_64;

// Uniform double in [0,1) from the top 53 bits; unlike the distribution
// classes this mapping is pinned by us, so seeded fixtures are portable
// across standard library implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Box-Muller; draws two uniforms per call and keeps no state.
inline double gaussian(Rng& rng) {
  double u1 = 0.0;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

inline Eigen::Vector3d gaussian3(Rng& rng) {
  return {gaussian(rng), gaussian(rng), gaussian(rng)};
}

inline Eigen::Vector3d random_unit3(Rng& rng) {
  Eigen::Vector3d v = gaussian3(rng);
  while (v.norm() < 1e-12) v = gaussian3(rng);
  return v.normalized();
}

}  // namespace symred
