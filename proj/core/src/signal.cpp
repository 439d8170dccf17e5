#include "beamsim/signal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beamsim/angles.hpp"
#include "beamsim/errors.hpp"

namespace beamsim {

void validate(const MonoSignal& signal) {
  if (!(signal.sample_rate > 0.0) || !std::isfinite(signal.sample_rate)) {
    throw ParameterError("sample rate must be a positive finite value");
  }
}

MonoSignal make_tone(double frequency, double duration_seconds,
                     double sample_rate, double amplitude, double phase) {
  if (!(sample_rate > 0.0) || !(duration_seconds >= 0.0)) {
    throw ParameterError("tone needs a positive sample rate and duration");
  }
  const auto length = static_cast<std::size_t>(std::llround(duration_seconds * sample_rate));
  MonoSignal signal{std::vector<double>(length), sample_rate};
  const double step = kTwoPi * frequency / sample_rate;
  for (std::size_t i = 0; i < length; ++i) {
    signal.samples[i] = amplitude * std::sin(step * static_cast<double>(i) + phase);
  }
  return signal;
}

MonoSignal make_impulse(std::size_t length, std::size_t position,
                        double sample_rate) {
  if (position >= length) {
    throw ParameterError("impulse position beyond signal length");
  }
  MonoSignal signal{std::vector<double>(length, 0.0), sample_rate};
  signal.samples[position] = 1.0;
  return signal;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr double kGoldenRatioFraction = 0.6180339887498949;

double fractional(double x) { return x - std::floor(x); }

}  // namespace

MonoSignal make_synthetic_speech(double duration_seconds, double sample_rate) {
  if (!(sample_rate > 0.0) || !(duration_seconds > 0.0)) {
    throw ParameterError("synthetic speech needs a positive sample rate and duration");
  }
  const auto length = static_cast<std::size_t>(std::llround(duration_seconds * sample_rate));
  MonoSignal signal{std::vector<double>(length, 0.0), sample_rate};

  const double fundamental = 150.0;
  for (int harmonic = 1; harmonic <= 20; ++harmonic) {
    const double amplitude = 1.0 / harmonic;
    const double phase = kTwoPi * fractional(harmonic * kGoldenRatioFraction);
    const double step = kTwoPi * fundamental * harmonic / sample_rate;
    for (std::size_t i = 0; i < length; ++i) {
      signal.samples[i] += amplitude * std::sin(step * static_cast<double>(i) + phase);
    }
  }
  // syllable-rate amplitude modulation
  for (std::size_t i = 0; i < length; ++i) {
    const double t = static_cast<double>(i) / sample_rate;
    signal.samples[i] *= 0.5 * (1.0 - std::cos(kTwoPi * 4.0 * t));
  }
  // Band-limited noise floor so every analysis bin carries signal energy;
  // staying below ~4.6 kHz keeps the content inside the interpolator's
  // accurate band at 16 kHz.
  const double noise_amplitude = 5e-4;
  int component = 0;
  for (double frequency = 200.0; frequency <= 4600.0 + 1e-9; frequency += 10.0) {
    ++component;
    const double phase = kTwoPi * fractional(component * 7.0 * kGoldenRatioFraction);
    const double step = kTwoPi * frequency / sample_rate;
    for (std::size_t i = 0; i < length; ++i) {
      signal.samples[i] += noise_amplitude * std::sin(step * static_cast<double>(i) + phase);
    }
  }

  double peak = 0.0;
  for (double sample : signal.samples) {
    peak = std::max(peak, std::abs(sample));
  }
  if (peak > 0.0) {
    const double gain = 0.5 / peak;
    for (double& sample : signal.samples) {
      sample *= gain;
    }
  }
  return signal;
}

MonoSignal make_white_noise(std::size_t length, double sample_rate,
                            double amplitude, std::uint64_t seed) {
  MonoSignal signal{std::vector<double>(length), sample_rate};
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < length; ++i) {
    // top 53 bits -> uniform double in [0, 1)
    const double unit = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    signal.samples[i] = amplitude * (2.0 * unit - 1.0);
  }
  return signal;
}

double rms(const std::vector<double>& samples, std::size_t first,
           std::size_t last) {
  if (first >= last || last > samples.size()) {
    throw ParameterError("invalid rms range");
  }
  double acc = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    acc += samples[i] * samples[i];
  }
  return std::sqrt(acc / static_cast<double>(last - first));
}

double rms_relative_error(const std::vector<double>& a,
                          const std::vector<double>& b, std::size_t first,
                          std::size_t last) {
  if (first >= last || last > a.size() || last > b.size()) {
    throw ParameterError("invalid rms range");
  }
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    const double d = a[i] - b[i];
    err += d * d;
    ref += a[i] * a[i];
  }
  if (ref == 0.0) {
    return err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::sqrt(err / ref);
}

}  // namespace beamsim
