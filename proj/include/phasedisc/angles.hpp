#pragma once

#include <cmath>
#include <utility>

namespace phasedisc {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Canonical angle range used throughout: (-pi, pi].
inline double wrap_angle(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

/// Circular distance between two angles, in [0, pi].
inline double circular_distance(double a, double b) {
  return std::abs(wrap_angle(a - b));
}

/// Midpoint of two angles along the shorter arc between them.
/// For an antipodal pair the midpoint reached going counterclockwise
/// from the smaller canonical angle is chosen, so the result does not
/// depend on argument order.
inline double circular_midpoint(double a, double b) {
  double x = wrap_angle(a);
  double y = wrap_angle(b);
  if (x > y) std::swap(x, y);
  const double arc = y - x;  // in [0, 2*pi)
  double mid = 0.5 * (x + y);
  if (arc > kPi) mid += kPi;
  return wrap_angle(mid);
}

}  // namespace phasedisc
