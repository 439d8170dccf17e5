#pragma once

#include <cmath>
#include <numbers>

namespace beamsim {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double radians_from_degrees(double degrees) {
  return degrees * (kPi / 180.0);
}

constexpr double degrees_from_radians(double radians) {
  return radians * (180.0 / kPi);
}

/// Wraps an angle into [0, 2*pi).
inline double wrap_angle(double radians) {
  double wrapped = std::fmod(radians, kTwoPi);
  if (wrapped < 0.0) {
    wrapped += kTwoPi;
  }
  if (wrapped >= kTwoPi) {  // fmod of a tiny negative can round up to 2*pi
    wrapped = 0.0;
  }
  return wrapped;
}

}  // namespace beamsim
