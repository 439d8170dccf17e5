#include "beamsim/beampattern.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "beamsim/angles.hpp"

namespace beamsim {

std::complex<double> transfer_function(const ArrayGeometry& geometry,
                                       double steering_angle,
                                       double arrival_angle, double omega,
                                       const Medium& medium) {
  if (!std::isfinite(omega)) {
    throw ParameterError("omega must be finite");
  }
  const DelayVector physical = physical_delays(geometry, arrival_angle, medium);
  const DelayVector steering = steering_delays(geometry, steering_angle, medium);
  const std::size_t n = physical.size();
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double phase = -omega * (physical[k] - steering[k]);
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  return {re * inv_n, im * inv_n};
}

namespace {

std::vector<double> grid_frequencies(double f_min, double f_max, double f_step) {
  const auto count =
      static_cast<std::size_t>(std::floor((f_max - f_min) / f_step + 1e-9)) + 1;
  std::vector<double> frequencies(count);
  for (std::size_t i = 0; i < count; ++i) {
    frequencies[i] = f_min + static_cast<double>(i) * f_step;
  }
  return frequencies;
}

std::vector<double> grid_angles(double angle_step, double steering) {
  const auto count =
      static_cast<std::size_t>(std::floor((kTwoPi - 1e-12) / angle_step)) + 1;
  std::vector<double> angles(count);
  for (std::size_t i = 0; i < count; ++i) {
    angles[i] = static_cast<double>(i) * angle_step;
  }
  // Make sure the steering angle itself is a grid column, so the unity-gain
  // invariant is assertable on every row.
  const auto nearest = static_cast<std::size_t>(std::min<long long>(
      std::llround(steering / angle_step), static_cast<long long>(count - 1)));
  if (std::abs(angles[nearest] - steering) <= 1e-9) {
    angles[nearest] = steering;
  } else {
    angles.insert(std::lower_bound(angles.begin(), angles.end(), steering),
                  steering);
  }
  return angles;
}

}  // namespace

BeamPatternGrid compute_grid(const ArrayGeometry& geometry, double steering_angle,
                             double f_min, double f_max, double f_step,
                             double angle_step, const Medium& medium,
                             unsigned threads) {
  validate(medium);
  if (!(f_min > 0.0) || !(f_min <= f_max)) {
    throw ParameterError("frequency range must satisfy 0 < f_min <= f_max");
  }
  if (!(f_step > 0.0)) {
    throw ParameterError("frequency step must be positive");
  }
  if (!(angle_step > 0.0) || angle_step > kPi / 8.0 + 1e-12) {
    throw ParameterError("angle step must lie in (0, pi/8]");
  }

  BeamPatternGrid grid{geometry, medium, wrap_angle(steering_angle),
                       f_step,   angle_step, {}, {}, {}};
  grid.frequencies = grid_frequencies(f_min, f_max, f_step);
  grid.angles = grid_angles(angle_step, grid.steering_angle);
  grid.values.resize(grid.frequencies.size());

  const auto compute_row = [&](std::size_t row) {
    const double omega = kTwoPi * grid.frequencies[row];
    auto& cells = grid.values[row];
    cells.resize(grid.angles.size());
    for (std::size_t a = 0; a < grid.angles.size(); ++a) {
      cells[a] = transfer_function(geometry, grid.steering_angle,
                                   grid.angles[a], omega, medium);
    }
  };

  const std::size_t rows = grid.frequencies.size();
  unsigned worker_count = threads != 0 ? threads : std::thread::hardware_concurrency();
  worker_count = std::max(1u, std::min<unsigned>(worker_count, static_cast<unsigned>(rows)));
  if (worker_count == 1) {
    for (std::size_t row = 0; row < rows; ++row) {
      compute_row(row);
    }
  } else {
    // Rows are independent and land in preallocated slots, so any schedule
    // reproduces the sequential grid bit for bit.
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (unsigned w = 0; w < worker_count; ++w) {
      workers.emplace_back([&, w] {
        for (std::size_t row = w; row < rows; row += worker_count) {
          compute_row(row);
        }
      });
    }
    for (auto& worker : workers) {
      worker.join();
    }
  }
  return grid;
}

PolarSlice polar_slice(const BeamPatternGrid& grid, double frequency) {
  if (grid.frequencies.empty()) {
    throw RangeError("grid has no frequency rows");
  }
  const double tolerance = 1e-6;
  if (frequency < grid.frequencies.front() - tolerance ||
      frequency > grid.frequencies.back() + tolerance) {
    throw RangeError("frequency outside the grid range");
  }
  std::size_t best = 0;
  double best_distance = std::abs(grid.frequencies[0] - frequency);
  for (std::size_t i = 1; i < grid.frequencies.size(); ++i) {
    const double distance = std::abs(grid.frequencies[i] - frequency);
    if (distance < best_distance) {
      best = i;
      best_distance = distance;
    }
  }
  PolarSlice slice{grid.frequencies[best], grid.angles, {}};
  slice.magnitudes.resize(grid.angles.size());
  for (std::size_t a = 0; a < grid.angles.size(); ++a) {
    slice.magnitudes[a] = std::abs(grid.values[best][a]);
  }
  return slice;
}

namespace {

struct Run {
  std::size_t start;
  std::size_t length;
  double value;
};

}  // namespace

LobeReport find_lobes(const PolarSlice& slice, double min_magnitude) {
  if (!(min_magnitude >= 0.0) || min_magnitude > 1.0) {
    throw ParameterError("min_magnitude must lie in [0, 1]");
  }
  const std::size_t n = slice.magnitudes.size();
  if (n == 0) {
    return {};
  }

  // Collapse circularly adjacent equal values into runs.
  std::vector<Run> runs;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && slice.magnitudes[j + 1] == slice.magnitudes[i]) {
      ++j;
    }
    runs.push_back({i, j - i + 1, slice.magnitudes[i]});
    i = j + 1;
  }
  if (runs.size() > 1 && runs.front().value == runs.back().value) {
    // wrap-around: the last run continues into the first
    runs.front().start = runs.back().start;
    runs.front().length += runs.back().length;
    runs.pop_back();
  }

  LobeReport report;
  const auto center_angle = [&](const Run& run) {
    const std::size_t center = (run.start + (run.length - 1) / 2) % n;
    return slice.angles[center];
  };
  if (runs.size() == 1) {
    // Constant slice: one degenerate plateau covering the whole circle.
    if (runs[0].value >= min_magnitude) {
      report.lobes.push_back({center_angle(runs[0]), runs[0].value});
    }
  } else {
    for (std::size_t r = 0; r < runs.size(); ++r) {
      const Run& run = runs[r];
      const Run& prev = runs[(r + runs.size() - 1) % runs.size()];
      const Run& next = runs[(r + 1) % runs.size()];
      if (run.value > prev.value && run.value > next.value &&
          run.value >= min_magnitude) {
        report.lobes.push_back({center_angle(run), run.value});
      }
    }
  }
  std::stable_sort(report.lobes.begin(), report.lobes.end(),
                   [](const Lobe& a, const Lobe& b) {
                     if (a.magnitude != b.magnitude) {
                       return a.magnitude > b.magnitude;
                     }
                     return a.angle < b.angle;
                   });
  return report;
}

double to_decibels(double magnitude) {
  return 20.0 * std::log10(std::max(magnitude, 1e-10));
}

}  // namespace beamsim
