#pragma once

#include <cstddef>
#include <vector>

#include "beamsim/errors.hpp"

namespace beamsim {

/// Acoustic medium. Plane-wave delays scale with 1/sound_speed.
struct Medium {
  double sound_speed = 343.0;  // m/s, dry air at 20 C
};

void validate(const Medium& medium);

enum class ArrayKind { UniformLinear, UniformCircular };

/// Immutable microphone-array description: N microphones either on a line
/// with uniform spacing d, or on a circle of radius r at azimuths k*2*pi/N.
/// For the circular kind the adjacent-microphone spacing is the chord
/// d = 2*r*sin(pi/N), so spacing() is always defined; radius() only exists
/// for the circular kind.
class ArrayGeometry {
 public:
  static ArrayGeometry linear(int mic_count, double spacing_m);
  static ArrayGeometry circular(int mic_count, double radius_m);
  /// Circular array sized so adjacent microphones sit spacing_m apart.
  static ArrayGeometry circular_from_spacing(int mic_count, double spacing_m);

  ArrayKind kind() const { return kind_; }
  int mic_count() const { return mic_count_; }

  /// Distance between adjacent microphones in meters.
  double spacing() const;
  /// Circle radius in meters; GeometryMismatchError for linear arrays.
  double radius() const;
  /// Physical extent: (N-1)*d for linear, 2*r for circular.
  double aperture() const;

 private:
  ArrayGeometry(ArrayKind kind, int mic_count, double dimension);

  ArrayKind kind_;
  int mic_count_;
  double dimension_;  // spacing for linear, radius for circular
};

/// Per-microphone delays in seconds. Storage is 0-based: the microphone
/// indexed k = 1..N in the delay formulas lives at seconds[k-1].
struct DelayVector {
  std::vector<double> seconds;

  std::size_t size() const { return seconds.size(); }
  double operator[](std::size_t i) const { return seconds[i]; }
};

/// Radius of the circle on which N microphones spaced d meters apart sit:
/// r = d / (2*sin(pi/N)).
double spacing_to_radius(double spacing_m, int mic_count);

/// Delay_k = (d/c) * (k - (N+1)/2) * cos(angle), k = 1..N.
/// Wave-arrival delays of a plane wave hitting a uniform linear array;
/// the angle is measured from the array axis, so broadside is pi/2.
DelayVector linear_physical_delays(const ArrayGeometry& geometry,
                                   double arrival_angle,
                                   const Medium& medium);

/// Steering delays for a uniform linear array: same formula as the
/// physical delays, evaluated at the steering angle.
DelayVector linear_steering_delays(const ArrayGeometry& geometry,
                                   double steering_angle,
                                   const Medium& medium);

/// Delay_k = (r/c) * cos(angle - k*2*pi/N), k = 1..N.
DelayVector circular_physical_delays(const ArrayGeometry& geometry,
                                     double arrival_angle,
                                     const Medium& medium);

/// Steering delays for a uniform circular array: same formula as the
/// physical delays, evaluated at the steering angle.
DelayVector circular_steering_delays(const ArrayGeometry& geometry,
                                     double steering_angle,
                                     const Medium& medium);

/// Kind-dispatching wrappers.
DelayVector physical_delays(const ArrayGeometry& geometry, double arrival_angle,
                            const Medium& medium);
DelayVector steering_delays(const ArrayGeometry& geometry, double steering_angle,
                            const Medium& medium);

/// Upper bound on any |delay|: aperture / (2*c).
double max_delay_bound(const ArrayGeometry& geometry, const Medium& medium);

}  // namespace beamsim
