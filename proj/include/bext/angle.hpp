#pragma once

#include <cmath>
#include <numbers>

namespace bext {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Shift x by the nearest multiple of 2pi (ties resolved toward zero) into
// the canonical window [0, 2pi).
inline double canonicalize_angle(double x) {
  double q = x / kTwoPi;
  double k = std::round(q);
  if (std::abs(q - k) == 0.5) k = std::trunc(q);
  double r = x - k * kTwoPi;
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

// A point on the unit circle, stored as its canonical angle in [0, 2pi).
class Angle {
 public:
  Angle() = default;
  explicit Angle(double radians) : radians_(canonicalize_angle(radians)) {}

  double radians() const { return radians_; }
  double cos() const { return std::cos(radians_); }
  double sin() const { return std::sin(radians_); }

 private:
  double radians_ = 0.0;
};

// Distance from x to the nearest multiple of 2pi.
inline double mod_2pi_distance(double x) { return std::abs(std::remainder(x, kTwoPi)); }

// Arc distance between two circle points, in [0, pi].
inline double circle_distance(Angle a, Angle b) {
  return mod_2pi_distance(a.radians() - b.radians());
}

// Difference wrapped into (-pi, pi].
inline double wrap_to_pi(double x) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace bext
