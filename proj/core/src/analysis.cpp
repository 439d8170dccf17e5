#include "beamsim/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "beamsim/angles.hpp"
#include "beamsim/errors.hpp"

namespace beamsim {

namespace {

constexpr double kFloorDb = -120.0;

/// Averaged magnitude of the one-sided spectrum, scaled so a unit-amplitude
/// sine centered on a bin reads 1.0.
std::vector<double> averaged_magnitude(const std::vector<double>& samples,
                                       std::size_t segment, std::size_t hop,
                                       std::size_t segments) {
  std::vector<double> window(segment);
  double window_sum = 0.0;
  for (std::size_t i = 0; i < segment; ++i) {
    window[i] = 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(i) /
                                      static_cast<double>(segment)));
    window_sum += window[i];
  }

  const std::size_t bins = segment / 2 + 1;
  std::vector<double> accumulated(bins, 0.0);

  double* in = fftw_alloc_real(segment);
  auto* out = fftw_alloc_complex(bins);
  fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(segment), in, out,
                                        FFTW_ESTIMATE);
  if (plan == nullptr) {
    fftw_free(in);
    fftw_free(out);
    throw ParameterError("could not plan the spectrum FFT");
  }

  for (std::size_t s = 0; s < segments; ++s) {
    const std::size_t begin = s * hop;
    for (std::size_t i = 0; i < segment; ++i) {
      in[i] = samples[begin + i] * window[i];
    }
    fftw_execute(plan);
    for (std::size_t k = 0; k < bins; ++k) {
      accumulated[k] += std::hypot(out[k][0], out[k][1]);
    }
  }

  fftw_destroy_plan(plan);
  fftw_free(in);
  fftw_free(out);

  const double scale = 2.0 / (window_sum * static_cast<double>(segments));
  for (double& value : accumulated) {
    value *= scale;
  }
  return accumulated;
}

double floored_db(double magnitude) {
  const double floor_linear = std::pow(10.0, kFloorDb / 20.0);
  return 20.0 * std::log10(std::max(magnitude, floor_linear));
}

}  // namespace

AttenuationSpectrum attenuation_spectrum(const MonoSignal& source,
                                         const MonoSignal& output,
                                         double band_low, double band_high,
                                         double resolution_hz) {
  validate(source);
  validate(output);
  if (source.sample_rate != output.sample_rate) {
    throw ParameterError("source and output sample rates differ");
  }
  const double fs = source.sample_rate;
  if (!(resolution_hz > 0.0)) {
    throw ParameterError("resolution must be positive");
  }
  if (!(band_low > 0.0) || !(band_low < band_high) || band_high > fs / 2.0) {
    throw RangeError("band must satisfy 0 < low < high <= Nyquist");
  }

  const auto segment = static_cast<std::size_t>(std::llround(fs / resolution_hz));
  if (segment < 16) {
    throw ParameterError("resolution too coarse: segment would be shorter than 16 samples");
  }
  const std::size_t length = std::min(source.samples.size(), output.samples.size());
  if (length < segment) {
    throw ParameterError("signals shorter than one analysis segment");
  }
  const std::size_t hop = segment / 2;
  const std::size_t segments = 1 + (length - segment) / hop;

  const std::vector<double> source_mag =
      averaged_magnitude(source.samples, segment, hop, segments);
  const std::vector<double> output_mag =
      averaged_magnitude(output.samples, segment, hop, segments);

  AttenuationSpectrum spectrum;
  spectrum.band_low = band_low;
  spectrum.band_high = band_high;
  spectrum.segment_length = segment;
  spectrum.segment_count = segments;
  const double bin_width = fs / static_cast<double>(segment);
  for (std::size_t k = 0; k < source_mag.size(); ++k) {
    const double frequency = static_cast<double>(k) * bin_width;
    if (frequency < band_low - 1e-9 || frequency > band_high + 1e-9) {
      continue;
    }
    const double s_db = floored_db(source_mag[k]);
    const double o_db = floored_db(output_mag[k]);
    spectrum.frequencies.push_back(frequency);
    spectrum.source_db.push_back(s_db);
    spectrum.output_db.push_back(o_db);
    spectrum.attenuation_db.push_back(s_db - o_db);
  }
  if (spectrum.frequencies.empty()) {
    throw RangeError("no spectrum bins fall inside the requested band");
  }
  return spectrum;
}

namespace {

std::pair<std::size_t, std::size_t> bin_range(const AttenuationSpectrum& spectrum,
                                              double f_low, double f_high) {
  if (f_low < spectrum.band_low - 1e-9 || f_high > spectrum.band_high + 1e-9 ||
      !(f_low <= f_high)) {
    throw RangeError("sub-band outside the spectrum band");
  }
  std::size_t first = spectrum.frequencies.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < spectrum.frequencies.size(); ++i) {
    if (spectrum.frequencies[i] >= f_low - 1e-9 &&
        spectrum.frequencies[i] <= f_high + 1e-9) {
      first = std::min(first, i);
      last = std::max(last, i + 1);
    }
  }
  if (first >= last) {
    throw RangeError("no spectrum bins inside the requested sub-band");
  }
  return {first, last};
}

}  // namespace

double band_average_attenuation(const AttenuationSpectrum& spectrum,
                                double f_low, double f_high) {
  const auto [first, last] = bin_range(spectrum, f_low, f_high);
  double acc = 0.0;
  for (std::size_t i = first; i < last; ++i) {
    acc += spectrum.attenuation_db[i];
  }
  return acc / static_cast<double>(last - first);
}

double peak_attenuation(const AttenuationSpectrum& spectrum, double f_low,
                        double f_high) {
  const auto [first, last] = bin_range(spectrum, f_low, f_high);
  double peak = spectrum.attenuation_db[first];
  for (std::size_t i = first; i < last; ++i) {
    peak = std::max(peak, spectrum.attenuation_db[i]);
  }
  return peak;
}

double tone_amplitude(const MonoSignal& signal, double frequency,
                      std::size_t start, std::size_t count) {
  validate(signal);
  const double fs = signal.sample_rate;
  if (!(frequency > 0.0) || frequency >= fs / 2.0) {
    throw ParameterError("tone frequency must lie in (0, Nyquist)");
  }
  if (count == 0 || start + count > signal.samples.size()) {
    throw RangeError("tone window outside the signal");
  }
  // whole number of cycles, so the projection is leakage-free
  auto cycles = static_cast<std::int64_t>(
      std::floor(static_cast<double>(count) * frequency / fs));
  if (cycles < 1) {
    throw ParameterError("tone window shorter than one cycle");
  }
  auto window = static_cast<std::size_t>(
      std::llround(static_cast<double>(cycles) * fs / frequency));
  while (window > count && cycles > 1) {
    --cycles;
    window = static_cast<std::size_t>(
        std::llround(static_cast<double>(cycles) * fs / frequency));
  }
  window = std::min(window, count);

  const double step = kTwoPi * frequency / fs;
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < window; ++i) {
    const double phase = step * static_cast<double>(i);
    acc += signal.samples[start + i] *
           std::complex<double>(std::cos(phase), -std::sin(phase));
  }
  return 2.0 * std::abs(acc) / static_cast<double>(window);
}

std::pair<MonoSignal, MonoSignal> latency_align(const MonoSignal& source,
                                                const MonoSignal& output,
                                                std::int64_t latency_samples,
                                                std::int64_t guard_samples) {
  validate(source);
  validate(output);
  if (source.sample_rate != output.sample_rate) {
    throw ParameterError("source and output sample rates differ");
  }
  if (latency_samples < 0 || guard_samples < 0) {
    throw ParameterError("latency and guard must be non-negative");
  }
  const auto n_source = static_cast<std::int64_t>(source.samples.size());
  const auto n_output = static_cast<std::int64_t>(output.samples.size());
  const std::int64_t first = guard_samples;
  const std::int64_t last =
      std::min(n_source - guard_samples, n_output - latency_samples - guard_samples);
  if (last <= first) {
    throw ParameterError("signals too short for the requested alignment");
  }
  const auto count = static_cast<std::size_t>(last - first);
  MonoSignal source_slice{std::vector<double>(count), source.sample_rate};
  MonoSignal output_slice{std::vector<double>(count), output.sample_rate};
  for (std::size_t i = 0; i < count; ++i) {
    source_slice.samples[i] = source.samples[static_cast<std::size_t>(first) + i];
    output_slice.samples[i] =
        output.samples[static_cast<std::size_t>(first + latency_samples) + i];
  }
  return {std::move(source_slice), std::move(output_slice)};
}

}  // namespace beamsim
