#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace beamsim {

/// A single sampled channel.
struct MonoSignal {
  std::vector<double> samples;
  double sample_rate = 0.0;  // Hz

  std::size_t size() const { return samples.size(); }
  double duration() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate
                             : 0.0;
  }
};

void validate(const MonoSignal& signal);

/// amplitude * sin(2*pi*frequency*t + phase)
MonoSignal make_tone(double frequency, double duration_seconds,
                     double sample_rate, double amplitude = 1.0,
                     double phase = 0.0);

/// Unit impulse at the given sample index.
MonoSignal make_impulse(std::size_t length, std::size_t position,
                        double sample_rate);

/// Deterministic speech-like test signal: 20 harmonics of 150 Hz with a
/// 1/h amplitude roll-off and a 4 Hz raised-cosine amplitude modulation,
/// over a low-level band-limited multisine noise floor (200-4600 Hz).
/// Peak normalized to 0.5. Byte-identical across runs.
MonoSignal make_synthetic_speech(double duration_seconds, double sample_rate);

/// Deterministic uniform white noise in [-amplitude, amplitude).
MonoSignal make_white_noise(std::size_t length, double sample_rate,
                            double amplitude, std::uint64_t seed);

/// Root mean square of samples[first, last).
double rms(const std::vector<double>& samples, std::size_t first,
           std::size_t last);

/// RMS of (a - b) over [first, last), relative to the RMS of a.
double rms_relative_error(const std::vector<double>& a,
                          const std::vector<double>& b, std::size_t first,
                          std::size_t last);

}  // namespace beamsim
