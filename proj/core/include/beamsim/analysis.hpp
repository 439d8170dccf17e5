#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "beamsim/signal.hpp"

namespace beamsim {

/// Per-frequency attenuation between a source signal and the beamformer
/// output, from averaged-magnitude periodograms on a shared frequency grid.
/// attenuation_db[i] == source_db[i] - output_db[i] exactly.
struct AttenuationSpectrum {
  std::vector<double> frequencies;  // Hz, ascending, within [band_low, band_high]
  std::vector<double> source_db;
  std::vector<double> output_db;
  std::vector<double> attenuation_db;
  double band_low = 0.0;   // Hz
  double band_high = 0.0;  // Hz
  // estimator settings (averaged periodogram, Hann window, 50% overlap)
  std::size_t segment_length = 0;
  std::size_t segment_count = 0;
};

/// Averaged-magnitude spectra of both signals over [band_low, band_high],
/// with bin spacing ~resolution_hz (segment length = round(fs/resolution)),
/// Hann window, 50% overlap, magnitudes floored at -120 dB. The signals
/// must share a sample rate and be latency-aligned by the caller.
AttenuationSpectrum attenuation_spectrum(const MonoSignal& source,
                                         const MonoSignal& output,
                                         double band_low, double band_high,
                                         double resolution_hz);

/// Mean of attenuation_db over bins inside [f_low, f_high], which must lie
/// within the spectrum's band and cover at least one bin.
double band_average_attenuation(const AttenuationSpectrum& spectrum,
                                double f_low, double f_high);

/// Maximum of attenuation_db over bins inside [f_low, f_high].
double peak_attenuation(const AttenuationSpectrum& spectrum, double f_low,
                        double f_high);

/// Steady-state amplitude of a tone at the given frequency, measured by a
/// single-bin discrete Fourier projection over the largest whole number of
/// cycles that fits in samples [start, start + count).
double tone_amplitude(const MonoSignal& signal, double frequency,
                      std::size_t start, std::size_t count);

/// Trims a source/output pair for comparison: drops the output's latency
/// and guard_samples of edge transients from both ends, returning slices
/// of equal length (source first).
std::pair<MonoSignal, MonoSignal> latency_align(const MonoSignal& source,
                                                const MonoSignal& output,
                                                std::int64_t latency_samples,
                                                std::int64_t guard_samples);

}  // namespace beamsim
