#include "beamsim/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "beamsim/angles.hpp"

namespace beamsim {

void validate(const InterpolatorSpec& spec) {
  if (spec.half_width < 8) {
    throw ParameterError("interpolator needs at least 8 taps per side");
  }
}

namespace {

double normalized_sinc(double x) {
  if (x == 0.0) {
    return 1.0;
  }
  const double px = kPi * x;
  return std::sin(px) / px;
}

std::vector<double> interpolation_kernel(int half_width, double frac) {
  // taps at integer offsets n = -H..H around the (fractional) peak
  std::vector<double> taps(static_cast<std::size_t>(2 * half_width + 1));
  const double window_span = static_cast<double>(half_width + 1);
  for (int n = -half_width; n <= half_width; ++n) {
    const double t = static_cast<double>(n) - frac;
    const double window = 0.5 * (1.0 + std::cos(kPi * t / window_span));
    taps[static_cast<std::size_t>(n + half_width)] = normalized_sinc(t) * window;
  }
  return taps;
}

}  // namespace

MonoSignal fractional_delay(const MonoSignal& signal, double delay_seconds,
                            const InterpolatorSpec& spec) {
  validate(signal);
  validate(spec);
  const double fs = signal.sample_rate;
  const auto n = static_cast<std::int64_t>(signal.samples.size());
  if (std::abs(delay_seconds) * fs > static_cast<double>(n)) {
    throw RangeError("delay exceeds the signal duration");
  }

  const double shift = delay_seconds * fs + spec.half_width;
  const double shift_floor = std::floor(shift);
  const auto whole = static_cast<std::int64_t>(shift_floor);
  const double frac = shift - shift_floor;

  MonoSignal out{std::vector<double>(signal.samples.size(), 0.0), fs};
  if (frac == 0.0) {
    // pure integer shift
    const std::int64_t first = std::max<std::int64_t>(0, whole);
    const std::int64_t last = std::min<std::int64_t>(n, n + whole);
    for (std::int64_t i = first; i < last; ++i) {
      out.samples[static_cast<std::size_t>(i)] =
          signal.samples[static_cast<std::size_t>(i - whole)];
    }
    return out;
  }

  const std::vector<double> taps = interpolation_kernel(spec.half_width, frac);
  const auto tap_count = static_cast<std::int64_t>(taps.size());
  for (std::int64_t i = 0; i < n; ++i) {
    // out[i] = sum_j taps[j] * x[base - j], base = i - whole + half_width
    const std::int64_t base = i - whole + spec.half_width;
    const std::int64_t j_first = std::max<std::int64_t>(0, base - (n - 1));
    const std::int64_t j_last = std::min<std::int64_t>(tap_count - 1, base);
    double acc = 0.0;
    for (std::int64_t j = j_first; j <= j_last; ++j) {
      acc += taps[static_cast<std::size_t>(j)] *
             signal.samples[static_cast<std::size_t>(base - j)];
    }
    out.samples[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

namespace {

struct StageOffsets {
  std::int64_t offset_samples;  // whole-sample causality offset
  std::int64_t warmup_samples;  // group delay + longest applied delay
};

StageOffsets stage_offsets(const std::vector<double>& applied_before_offset,
                           double fs, int half_width) {
  double lowest = 0.0;
  double highest = 0.0;
  for (double delay : applied_before_offset) {
    lowest = std::min(lowest, delay);
    highest = std::max(highest, delay);
  }
  const auto offset = static_cast<std::int64_t>(std::ceil(-lowest * fs));
  const double max_applied = highest + static_cast<double>(offset) / fs;
  const auto warmup = half_width + static_cast<std::int64_t>(std::ceil(max_applied * fs));
  return {offset, warmup};
}

}  // namespace

MultichannelCapture propagate(const MonoSignal& source,
                              const ArrayGeometry& geometry,
                              double arrival_angle, const Medium& medium,
                              const InterpolatorSpec& spec) {
  validate(source);
  validate(spec);
  const DelayVector delays = physical_delays(geometry, arrival_angle, medium);
  const double fs = source.sample_rate;
  const StageOffsets offsets = stage_offsets(delays.seconds, fs, spec.half_width);
  const double offset_seconds = static_cast<double>(offsets.offset_samples) / fs;

  MultichannelCapture capture{{},
                              fs,
                              geometry,
                              wrap_angle(arrival_angle),
                              offsets.offset_samples + spec.half_width,
                              offsets.warmup_samples};
  capture.channels.reserve(delays.size());
  for (std::size_t k = 0; k < delays.size(); ++k) {
    capture.channels.push_back(
        fractional_delay(source, delays[k] + offset_seconds, spec).samples);
  }
  return capture;
}

BeamformResult beamform(const MultichannelCapture& capture,
                        double steering_angle, const Medium& medium,
                        const InterpolatorSpec& spec) {
  validate(spec);
  if (!(capture.sample_rate > 0.0)) {
    throw ParameterError("capture sample rate must be positive");
  }
  const auto n_channels = capture.channels.size();
  if (n_channels != static_cast<std::size_t>(capture.geometry.mic_count())) {
    throw GeometryMismatchError("channel count does not match the geometry");
  }
  for (const auto& channel : capture.channels) {
    if (channel.size() != capture.channels.front().size()) {
      throw ParameterError("capture channels must share one length");
    }
  }

  const DelayVector delays = steering_delays(capture.geometry, steering_angle, medium);
  const double fs = capture.sample_rate;
  // Steering advances each channel by its delay, so the applied (causal)
  // delay is the negated steering delay plus a whole-sample offset.
  std::vector<double> applied(delays.size());
  for (std::size_t k = 0; k < delays.size(); ++k) {
    applied[k] = -delays[k];
  }
  const StageOffsets offsets = stage_offsets(applied, fs, spec.half_width);
  const double offset_seconds = static_cast<double>(offsets.offset_samples) / fs;

  const std::size_t length = capture.channels.front().size();
  MonoSignal signal{std::vector<double>(length, 0.0), fs};
  for (std::size_t k = 0; k < n_channels; ++k) {
    const MonoSignal channel{capture.channels[k], fs};
    const MonoSignal delayed =
        fractional_delay(channel, applied[k] + offset_seconds, spec);
    for (std::size_t i = 0; i < length; ++i) {
      signal.samples[i] += delayed.samples[i];
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n_channels);
  for (double& sample : signal.samples) {
    sample *= inv_n;
  }

  return {std::move(signal),
          capture.latency_samples + offsets.offset_samples + spec.half_width,
          capture.warmup_samples + offsets.warmup_samples};
}

BeamformResult end_to_end(const MonoSignal& source, const ArrayGeometry& geometry,
                          double arrival_angle, double steering_angle,
                          const Medium& medium, const InterpolatorSpec& spec) {
  const MultichannelCapture capture =
      propagate(source, geometry, arrival_angle, medium, spec);
  return beamform(capture, steering_angle, medium, spec);
}

bool sample_rate_adequate(double sample_rate, double top_frequency) {
  return sample_rate >= 4.0 * top_frequency;
}

}  // namespace beamsim
