// Test-only reference implementations, kept independent of the library
// code paths they check.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace oracle {

inline constexpr long double kPi = 3.141592653589793238462643383279502884L;

/// Direct long-double evaluation of the uniform-linear-array response.
inline std::complex<double> linear_response(int mic_count, double spacing,
                                            double sound_speed, double steer,
                                            double arrival, double frequency) {
  const long double omega = 2.0L * kPi * static_cast<long double>(frequency);
  const long double scale =
      static_cast<long double>(spacing) / static_cast<long double>(sound_speed);
  const long double cosines = std::cos(static_cast<long double>(arrival)) -
                              std::cos(static_cast<long double>(steer));
  long double re = 0.0L;
  long double im = 0.0L;
  for (int k = 1; k <= mic_count; ++k) {
    const long double centered =
        static_cast<long double>(k) - (mic_count + 1) / 2.0L;
    const long double phase = -omega * scale * centered * cosines;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return {static_cast<double>(re / mic_count), static_cast<double>(im / mic_count)};
}

/// Direct long-double evaluation of the uniform-circular-array response.
inline std::complex<double> circular_response(int mic_count, double radius,
                                              double sound_speed, double steer,
                                              double arrival, double frequency) {
  const long double omega = 2.0L * kPi * static_cast<long double>(frequency);
  const long double scale =
      static_cast<long double>(radius) / static_cast<long double>(sound_speed);
  long double re = 0.0L;
  long double im = 0.0L;
  for (int k = 1; k <= mic_count; ++k) {
    const long double azimuth = 2.0L * kPi * k / mic_count;
    const long double diff =
        scale * (std::cos(static_cast<long double>(arrival) - azimuth) -
                 std::cos(static_cast<long double>(steer) - azimuth));
    const long double phase = -omega * diff;
    re += std::cos(phase);
    im += std::sin(phase);
  }
  return {static_cast<double>(re / mic_count), static_cast<double>(im / mic_count)};
}

/// Closed-form Dirichlet-kernel magnitude for the linear array, an
/// algebraically different route from the direct sums.
inline double linear_magnitude_closed_form(int mic_count, double spacing,
                                           double sound_speed, double steer,
                                           double arrival, double frequency) {
  const long double omega = 2.0L * kPi * static_cast<long double>(frequency);
  const long double u = omega *
                        static_cast<long double>(spacing) /
                        static_cast<long double>(sound_speed) *
                        (std::cos(static_cast<long double>(arrival)) -
                         std::cos(static_cast<long double>(steer)));
  const long double half_sin = std::sin(u / 2.0L);
  if (std::abs(half_sin) < 1e-18L) {
    return 1.0;
  }
  return static_cast<double>(
      std::abs(std::sin(mic_count * u / 2.0L) / (mic_count * half_sin)));
}

/// Deterministic RNG for property tests.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1).
inline double uniform(std::uint64_t& state) {
  return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace oracle
