#pragma once

#include <cstdint>
#include <vector>

#include "beamsim/geometry.hpp"
#include "beamsim/signal.hpp"

namespace beamsim {

/// Fractional-delay interpolator settings: a Hann-windowed sinc with
/// half_width taps on each side of the peak. The filter applies a constant
/// extra group delay of half_width samples, which the pipeline operations
/// fold into their reported latency.
struct InterpolatorSpec {
  enum class Kind { WindowedSinc };
  enum class Window { Hann };

  Kind kind = Kind::WindowedSinc;
  int half_width = 64;  // taps per side, >= 8
  Window window = Window::Hann;
};

void validate(const InterpolatorSpec& spec);

/// Simulated microphone outputs: one channel per microphone, all the same
/// length. Each channel lags the ideal wave-arrival capture by
/// latency_samples (causality offset plus interpolator group delay);
/// the first/last warmup_samples carry interpolator edge transients.
struct MultichannelCapture {
  std::vector<std::vector<double>> channels;
  double sample_rate = 0.0;
  ArrayGeometry geometry;
  double arrival_angle = 0.0;  // radians, wrapped
  std::int64_t latency_samples = 0;
  std::int64_t warmup_samples = 0;
};

/// Beamformer output plus latency bookkeeping. When the capture's arrival
/// angle equals the steering angle, the output reproduces the source
/// delayed by exactly latency_samples (an integer by construction).
struct BeamformResult {
  MonoSignal output;
  std::int64_t latency_samples = 0;
  std::int64_t warmup_samples = 0;
};

/// Delays the signal by delay_seconds plus the interpolator's constant
/// group delay of half_width samples. Output length equals input length;
/// edges are zero-padded. Delays whose magnitude exceeds the signal
/// duration are rejected.
MonoSignal fractional_delay(const MonoSignal& signal, double delay_seconds,
                            const InterpolatorSpec& spec);

/// Synthesizes the far-field capture of a plane wave from arrival_angle:
/// channel k is the source delayed by its wave-arrival delay plus a global
/// whole-sample offset that keeps every applied delay non-negative.
MultichannelCapture propagate(const MonoSignal& source,
                              const ArrayGeometry& geometry,
                              double arrival_angle, const Medium& medium,
                              const InterpolatorSpec& spec);

/// Advances each channel by its steering delay (again with a whole-sample
/// causality offset) and averages the channels in microphone order.
BeamformResult beamform(const MultichannelCapture& capture,
                        double steering_angle, const Medium& medium,
                        const InterpolatorSpec& spec);

/// propagate followed by beamform.
BeamformResult end_to_end(const MonoSignal& source, const ArrayGeometry& geometry,
                          double arrival_angle, double steering_angle,
                          const Medium& medium, const InterpolatorSpec& spec);

/// True when the sample rate is at least four times the top frequency of
/// interest, the margin needed for accurate digital delays.
bool sample_rate_adequate(double sample_rate, double top_frequency);

}  // namespace beamsim
