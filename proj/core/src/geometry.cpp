#include "beamsim/geometry.hpp"

#include <cmath>

#include "beamsim/angles.hpp"

namespace beamsim {

void validate(const Medium& medium) {
  if (!(medium.sound_speed > 0.0) || !std::isfinite(medium.sound_speed)) {
    throw ParameterError("sound speed must be a positive finite value");
  }
}

ArrayGeometry::ArrayGeometry(ArrayKind kind, int mic_count, double dimension)
    : kind_(kind), mic_count_(mic_count), dimension_(dimension) {
  if (mic_count < 2) {
    throw InvalidGeometryError("array needs at least 2 microphones");
  }
  if (!(dimension > 0.0) || !std::isfinite(dimension)) {
    throw InvalidGeometryError(kind == ArrayKind::UniformLinear
                                   ? "spacing must be a positive finite length"
                                   : "radius must be a positive finite length");
  }
}

ArrayGeometry ArrayGeometry::linear(int mic_count, double spacing_m) {
  return ArrayGeometry(ArrayKind::UniformLinear, mic_count, spacing_m);
}

ArrayGeometry ArrayGeometry::circular(int mic_count, double radius_m) {
  return ArrayGeometry(ArrayKind::UniformCircular, mic_count, radius_m);
}

ArrayGeometry ArrayGeometry::circular_from_spacing(int mic_count, double spacing_m) {
  return circular(mic_count, spacing_to_radius(spacing_m, mic_count));
}

double ArrayGeometry::spacing() const {
  if (kind_ == ArrayKind::UniformLinear) {
    return dimension_;
  }
  return 2.0 * dimension_ * std::sin(kPi / mic_count_);
}

double ArrayGeometry::radius() const {
  if (kind_ != ArrayKind::UniformCircular) {
    throw GeometryMismatchError("linear arrays have no radius");
  }
  return dimension_;
}

double ArrayGeometry::aperture() const {
  if (kind_ == ArrayKind::UniformLinear) {
    return (mic_count_ - 1) * dimension_;
  }
  return 2.0 * dimension_;
}

double spacing_to_radius(double spacing_m, int mic_count) {
  if (mic_count < 2) {
    throw InvalidGeometryError("array needs at least 2 microphones");
  }
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m)) {
    throw InvalidGeometryError("spacing must be a positive finite length");
  }
  return spacing_m / (2.0 * std::sin(kPi / mic_count));
}

namespace {

void require_kind(const ArrayGeometry& geometry, ArrayKind kind) {
  if (geometry.kind() != kind) {
    throw GeometryMismatchError(kind == ArrayKind::UniformLinear
                                    ? "operation requires a uniform linear array"
                                    : "operation requires a uniform circular array");
  }
}

}  // namespace

DelayVector linear_physical_delays(const ArrayGeometry& geometry,
                                   double arrival_angle, const Medium& medium) {
  require_kind(geometry, ArrayKind::UniformLinear);
  validate(medium);
  const double angle = wrap_angle(arrival_angle);
  const int n = geometry.mic_count();
  const double scale = geometry.spacing() / medium.sound_speed;
  const double cosine = std::cos(angle);
  DelayVector delays;
  delays.seconds.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // microphone index k = i + 1, centered at (N+1)/2
    const double centered = static_cast<double>(i) - (n - 1) / 2.0;
    delays.seconds[static_cast<std::size_t>(i)] = scale * centered * cosine;
  }
  return delays;
}

DelayVector linear_steering_delays(const ArrayGeometry& geometry,
                                   double steering_angle, const Medium& medium) {
  // Identical formula; sharing the code path keeps physical and steering
  // delays bit-identical for equal angles.
  return linear_physical_delays(geometry, steering_angle, medium);
}

DelayVector circular_physical_delays(const ArrayGeometry& geometry,
                                     double arrival_angle, const Medium& medium) {
  require_kind(geometry, ArrayKind::UniformCircular);
  validate(medium);
  const double angle = wrap_angle(arrival_angle);
  const int n = geometry.mic_count();
  const double scale = geometry.radius() / medium.sound_speed;
  const double step = kTwoPi / n;
  DelayVector delays;
  delays.seconds.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double mic_azimuth = (i + 1) * step;
    delays.seconds[static_cast<std::size_t>(i)] = scale * std::cos(angle - mic_azimuth);
  }
  return delays;
}

DelayVector circular_steering_delays(const ArrayGeometry& geometry,
                                     double steering_angle, const Medium& medium) {
  return circular_physical_delays(geometry, steering_angle, medium);
}

DelayVector physical_delays(const ArrayGeometry& geometry, double arrival_angle,
                            const Medium& medium) {
  if (geometry.kind() == ArrayKind::UniformLinear) {
    return linear_physical_delays(geometry, arrival_angle, medium);
  }
  return circular_physical_delays(geometry, arrival_angle, medium);
}

DelayVector steering_delays(const ArrayGeometry& geometry, double steering_angle,
                            const Medium& medium) {
  if (geometry.kind() == ArrayKind::UniformLinear) {
    return linear_steering_delays(geometry, steering_angle, medium);
  }
  return circular_steering_delays(geometry, steering_angle, medium);
}

double max_delay_bound(const ArrayGeometry& geometry, const Medium& medium) {
  validate(medium);
  return geometry.aperture() / (2.0 * medium.sound_speed);
}

}  // namespace beamsim
