#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "beamsim/geometry.hpp"

namespace beamsim {

/// Complex delay-and-sum array response over a frequency x arrival-angle
/// grid for one steering angle. values[f][a] corresponds to
/// frequencies[f] and angles[a].
struct BeamPatternGrid {
  ArrayGeometry geometry;
  Medium medium;
  double steering_angle = 0.0;      // radians, wrapped to [0, 2*pi)
  double frequency_step = 0.0;      // Hz
  double angle_step = 0.0;          // radians
  std::vector<double> frequencies;  // Hz, ascending
  std::vector<double> angles;       // radians, ascending, within [0, 2*pi)
  std::vector<std::vector<std::complex<double>>> values;
};

/// Response magnitudes of one grid row.
struct PolarSlice {
  double frequency = 0.0;      // Hz
  std::vector<double> angles;  // radians
  std::vector<double> magnitudes;
};

struct Lobe {
  double angle = 0.0;  // radians
  double magnitude = 0.0;
};

/// Circular local maxima of a slice, strongest first.
struct LobeReport {
  std::vector<Lobe> lobes;
};

/// Delay-and-sum transfer function
///   H(omega) = (1/N) * sum_k exp(-j*omega*(physical_k - steering_k))
/// with per-microphone delays taken from the geometry kind. Defined for
/// any real omega (rad/s); negative omega yields the conjugate response.
std::complex<double> transfer_function(const ArrayGeometry& geometry,
                                       double steering_angle,
                                       double arrival_angle, double omega,
                                       const Medium& medium);

/// Evaluates the transfer function over frequencies
/// {f_min, f_min+f_step, ..., <= f_max} and angles
/// {0, angle_step, ..., < 2*pi}. The steering angle is snapped onto the
/// nearest grid angle when one matches to 1e-9, otherwise inserted as an
/// extra column, so the unity-gain column is always present. Rows may be
/// computed on `threads` worker threads (0 = hardware concurrency); any
/// thread count produces a bit-identical grid.
BeamPatternGrid compute_grid(const ArrayGeometry& geometry, double steering_angle,
                             double f_min, double f_max, double f_step,
                             double angle_step, const Medium& medium,
                             unsigned threads = 0);

/// Magnitudes of the grid row nearest to the requested frequency
/// (the lower row on a tie). The frequency must lie within the grid range.
PolarSlice polar_slice(const BeamPatternGrid& grid, double frequency);

/// All circular local maxima with magnitude >= min_magnitude, strongest
/// first (ties by ascending angle). A plateau (maximal run of equal values
/// flanked by strictly smaller neighbours) counts once, at the run's
/// central angle; an all-constant slice reports a single lobe.
LobeReport find_lobes(const PolarSlice& slice, double min_magnitude);

/// 20*log10(magnitude) with the magnitude floored at 1e-10.
double to_decibels(double magnitude);

}  // namespace beamsim
