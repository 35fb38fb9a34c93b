// lorentzlab - deterministic low-discrepancy sampling helpers shared by the
// cone, ball, and sphere sweeps: Halton radical inverses and Box-Muller
// directions built on them. All sequences are pure functions of the index.

#pragma once

#include <cmath>

#include "lorentz/smallmat.hpp"

namespace lorentz {
namespace sampling {

inline constexpr int kPrimes[8] = {2, 3, 5, 7, 11, 13, 17, 19};
inline constexpr int kRadiusBase = 23;

inline double radical_inverse(int base, long long i) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Unit direction in d dimensions from paired low-discrepancy coordinates
// pushed through the normal transform. Index should start at 1 so no
// coordinate is ever exactly zero.
inline void unit_direction(int d, long long index, double* out) {
  double norm_sq = 0.0;
  for (int pair = 0; 2 * pair < d; ++pair) {
    const double u1 = radical_inverse(kPrimes[2 * pair], index);
    const double u2 = radical_inverse(kPrimes[2 * pair + 1], index);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double z0 = rad * std::cos(2.0 * kPi * u2);
    const double z1 = rad * std::sin(2.0 * kPi * u2);
    out[2 * pair] = z0;
    if (2 * pair + 1 < d) {
      out[2 * pair + 1] = z1;
      norm_sq += z0 * z0 + z1 * z1;
    } else {
      norm_sq += z0 * z0;
    }
  }
  if (norm_sq < 1e-18) {  // essentially impossible; keep deterministic anyway
    for (int i = 0; i < d; ++i) out[i] = 0.0;
    out[0] = 1.0;
    return;
  }
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (int i = 0; i < d; ++i) out[i] *= inv;
}

inline VecN sphere_point(int d, long long index) {
  VecN out(d);
  unit_direction(d, index, out.data());
  return out;
}

// Point in the closed unit ball; radius uses the d-th-root volume
// correction. Index 0 is the center itself.
inline VecN ball_point(int d, long long index) {
  VecN out(d);
  unit_direction(d, index + 1, out.data());
  const double radius = std::pow(radical_inverse(kRadiusBase, index), 1.0 / d);
  for (int i = 0; i < d; ++i) out[i] *= radius;
  return out;
}

}  // namespace sampling
}  // namespace lorentz
