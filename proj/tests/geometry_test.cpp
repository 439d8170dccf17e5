#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "beamsim/angles.hpp"
#include "beamsim/geometry.hpp"
#include "oracle.hpp"

using namespace beamsim;

namespace {
const Medium kAir{343.0};
}

TEST_CASE("broadside arrival yields zero delays on a linear array") {
  const auto geometry = ArrayGeometry::linear(8, 0.06);
  const DelayVector delays = linear_physical_delays(geometry, kPi / 2.0, kAir);
  REQUIRE(delays.size() == 8);
  for (std::size_t k = 0; k < delays.size(); ++k) {
    CHECK(std::abs(delays[k]) <= 1e-18);
  }
}

TEST_CASE("two-microphone endfire delays straddle half a millisecond") {
  const auto geometry = ArrayGeometry::linear(2, 0.343);
  const DelayVector delays = linear_physical_delays(geometry, 0.0, kAir);
  REQUIRE(delays.size() == 2);
  CHECK(delays[0] == doctest::Approx(-0.0005).epsilon(1e-12));
  CHECK(delays[1] == doctest::Approx(+0.0005).epsilon(1e-12));
}

TEST_CASE("reversed arrival negates linear delays exactly") {
  const auto geometry = ArrayGeometry::linear(8, 0.06);
  const DelayVector forward = linear_physical_delays(geometry, 0.0, kAir);
  const DelayVector backward = linear_physical_delays(geometry, kPi, kAir);
  for (std::size_t k = 0; k < forward.size(); ++k) {
    CHECK(backward[k] == -forward[k]);
  }
}

TEST_CASE("steering delays share the physical-delay code path bit for bit") {
  const auto linear = ArrayGeometry::linear(5, 0.1);
  const auto circular = ArrayGeometry::circular(7, 0.25);
  for (double angle : {0.0, 0.3, kPi / 3.0, 2.0, 5.5}) {
    const DelayVector lp = linear_physical_delays(linear, angle, kAir);
    const DelayVector ls = linear_steering_delays(linear, angle, kAir);
    CHECK(lp.seconds == ls.seconds);
    const DelayVector cp = circular_physical_delays(circular, angle, kAir);
    const DelayVector cs = circular_steering_delays(circular, angle, kAir);
    CHECK(cp.seconds == cs.seconds);
  }
}

TEST_CASE("sixty-degree steering of a two-microphone array") {
  const auto geometry = ArrayGeometry::linear(2, 0.343);
  const DelayVector delays = linear_steering_delays(geometry, kPi / 3.0, kAir);
  CHECK(delays[0] == doctest::Approx(-0.00025).epsilon(1e-12));
  CHECK(delays[1] == doctest::Approx(+0.00025).epsilon(1e-12));
}

TEST_CASE("four-microphone circular delays at zero arrival") {
  const auto geometry = ArrayGeometry::circular(4, 0.343);
  const DelayVector delays = circular_physical_delays(geometry, 0.0, kAir);
  REQUIRE(delays.size() == 4);
  CHECK(std::abs(delays[0] - 0.0) <= 1e-15);
  CHECK(delays[1] == doctest::Approx(-0.001).epsilon(1e-12));
  CHECK(std::abs(delays[2] - 0.0) <= 1e-15);
  CHECK(delays[3] == doctest::Approx(+0.001).epsilon(1e-12));
}

TEST_CASE("quarter-turn circular steering delays") {
  const auto geometry = ArrayGeometry::circular(4, 0.343);
  const DelayVector delays = circular_steering_delays(geometry, kPi / 2.0, kAir);
  CHECK(delays[0] == doctest::Approx(+0.001).epsilon(1e-12));
  CHECK(std::abs(delays[1] - 0.0) <= 1e-15);
  CHECK(delays[2] == doctest::Approx(-0.001).epsilon(1e-12));
  CHECK(std::abs(delays[3] - 0.0) <= 1e-15);
}

TEST_CASE("rotating the arrival by one microphone step shifts delays cyclically") {
  const auto geometry = ArrayGeometry::circular(8, 0.2);
  const double step = kTwoPi / 8.0;
  for (double base : {0.1, 1.0, 4.0}) {
    const DelayVector at_base = circular_physical_delays(geometry, base, kAir);
    const DelayVector rotated = circular_physical_delays(geometry, base + step, kAir);
    for (std::size_t k = 0; k < 8; ++k) {
      CHECK(rotated[(k + 1) % 8] == doctest::Approx(at_base[k]).epsilon(1e-10));
    }
  }
}

TEST_CASE("circular delays summed over a full turn of arrivals cancel") {
  const int n = 6;
  const auto geometry = ArrayGeometry::circular(n, 0.5);
  std::vector<double> sums(n, 0.0);
  for (int m = 0; m < n; ++m) {
    const DelayVector delays =
        circular_physical_delays(geometry, m * kTwoPi / n, kAir);
    for (int k = 0; k < n; ++k) {
      sums[static_cast<std::size_t>(k)] += delays[static_cast<std::size_t>(k)];
    }
  }
  for (double sum : sums) {
    CHECK(std::abs(sum) <= 1e-12);
  }
}

TEST_CASE("steering delay magnitude peaks at radius over sound speed") {
  const double radius = spacing_to_radius(0.06, 8);
  const auto geometry = ArrayGeometry::circular(8, radius);
  // steering at a microphone azimuth reaches the bound exactly
  const DelayVector aligned = circular_steering_delays(geometry, kPi / 2.0, kAir);
  double peak = 0.0;
  for (std::size_t k = 0; k < aligned.size(); ++k) {
    peak = std::max(peak, std::abs(aligned[k]));
  }
  CHECK(peak == radius / 343.0);
  CHECK(peak == doctest::Approx(2.2855e-4).epsilon(1e-4));
  // and never exceeds it
  std::uint64_t rng = 7;
  for (int trial = 0; trial < 200; ++trial) {
    const double steer = oracle::uniform(rng) * kTwoPi;
    const DelayVector delays = circular_steering_delays(geometry, steer, kAir);
    for (std::size_t k = 0; k < delays.size(); ++k) {
      CHECK(std::abs(delays[k]) <= radius / 343.0 + 1e-18);
    }
  }
}

TEST_CASE("spacing-to-radius conversion") {
  CHECK(spacing_to_radius(0.06, 8) ==
        doctest::Approx(0.078393777892582592).epsilon(1e-15));
  // sin(pi/6) = 1/2, so a hexagon's radius equals its spacing
  CHECK(spacing_to_radius(0.42, 6) == doctest::Approx(0.42).epsilon(1e-15));
  std::uint64_t rng = 11;
  for (int trial = 0; trial < 100; ++trial) {
    const double spacing = 0.01 + oracle::uniform(rng);
    const int mic_count = 2 + static_cast<int>(oracle::uniform(rng) * 30);
    const double radius = spacing_to_radius(spacing, mic_count);
    const double round_trip = 2.0 * radius * std::sin(kPi / mic_count);
    CHECK(round_trip == doctest::Approx(spacing).epsilon(4e-16));
  }
  CHECK_THROWS_AS(spacing_to_radius(0.06, 1), InvalidGeometryError);
  CHECK_THROWS_AS(spacing_to_radius(-0.06, 8), InvalidGeometryError);
  CHECK_THROWS_AS(spacing_to_radius(0.0, 8), InvalidGeometryError);
}

TEST_CASE("circular geometry keeps spacing and radius consistent") {
  const auto geometry = ArrayGeometry::circular_from_spacing(8, 0.06);
  CHECK(geometry.radius() == spacing_to_radius(0.06, 8));
  CHECK(geometry.spacing() == 2.0 * geometry.radius() * std::sin(kPi / 8.0));
  CHECK(geometry.aperture() == 2.0 * geometry.radius());
  const auto linear = ArrayGeometry::linear(8, 0.06);
  CHECK(linear.aperture() == doctest::Approx(0.42).epsilon(1e-15));
}

TEST_CASE("linear delay vectors are anti-symmetric about the array center") {
  std::uint64_t rng = 3;
  for (int trial = 0; trial < 100; ++trial) {
    const int mic_count = 2 + static_cast<int>(oracle::uniform(rng) * 15);
    const double spacing = 0.01 + 0.5 * oracle::uniform(rng);
    const double angle = oracle::uniform(rng) * kTwoPi;
    const auto geometry = ArrayGeometry::linear(mic_count, spacing);
    const DelayVector delays = linear_physical_delays(geometry, angle, kAir);
    const std::size_t n = delays.size();
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(delays[k] == -delays[n - 1 - k]);
    }
  }
}

TEST_CASE("every delay obeys the aperture bound") {
  std::uint64_t rng = 5;
  for (int trial = 0; trial < 200; ++trial) {
    const int mic_count = 2 + static_cast<int>(oracle::uniform(rng) * 15);
    const double dimension = 0.01 + oracle::uniform(rng);
    const double angle = oracle::uniform(rng) * kTwoPi;
    const auto geometry = (trial % 2 == 0)
                              ? ArrayGeometry::linear(mic_count, dimension)
                              : ArrayGeometry::circular(mic_count, dimension);
    const double bound = max_delay_bound(geometry, kAir);
    const DelayVector delays = physical_delays(geometry, angle, kAir);
    for (std::size_t k = 0; k < delays.size(); ++k) {
      CHECK(std::abs(delays[k]) <= bound * (1.0 + 1e-15));
    }
  }
}

TEST_CASE("linear delays depend on the arrival only through its cosine") {
  const auto geometry = ArrayGeometry::linear(8, 0.06);
  for (double angle : {0.2, 1.1, 2.9}) {
    const DelayVector plus = linear_physical_delays(geometry, angle, kAir);
    const DelayVector minus = linear_physical_delays(geometry, -angle, kAir);
    const DelayVector mirrored =
        linear_physical_delays(geometry, kTwoPi - angle, kAir);
    for (std::size_t k = 0; k < plus.size(); ++k) {
      CHECK(minus[k] == doctest::Approx(plus[k]).epsilon(1e-12));
      CHECK(mirrored[k] == doctest::Approx(plus[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("angles wrap before evaluation") {
  const auto geometry = ArrayGeometry::circular(5, 0.3);
  for (double angle : {0.7, 3.0, 5.9}) {
    const DelayVector base = circular_physical_delays(geometry, angle, kAir);
    const DelayVector wrapped =
        circular_physical_delays(geometry, angle + 2.0 * kTwoPi, kAir);
    const DelayVector canonical =
        circular_physical_delays(geometry, wrap_angle(angle), kAir);
    CHECK(base.seconds == canonical.seconds);
    for (std::size_t k = 0; k < base.size(); ++k) {
      CHECK(wrapped[k] == doctest::Approx(base[k]).epsilon(1e-10));
    }
  }
  CHECK(wrap_angle(-1e-20) == 0.0);
  CHECK(wrap_angle(kTwoPi) == 0.0);
  CHECK(wrap_angle(-0.5) == doctest::Approx(kTwoPi - 0.5));
}

TEST_CASE("circular delay vectors match only at equal angles on a half-degree scan") {
  const auto geometry = ArrayGeometry::circular_from_spacing(8, 0.06);
  const double steer = kPi / 2.0;
  const DelayVector steering = circular_steering_delays(geometry, steer, kAir);
  int matches = 0;
  for (int i = 0; i < 720; ++i) {
    const double arrival = radians_from_degrees(i * 0.5);
    const DelayVector physical = circular_physical_delays(geometry, arrival, kAir);
    double diff = 0.0;
    for (std::size_t k = 0; k < physical.size(); ++k) {
      diff = std::max(diff, std::abs(physical[k] - steering[k]));
    }
    if (diff < 1e-9) {
      ++matches;
      CHECK(i * 0.5 == 90.0);
    }
  }
  CHECK(matches == 1);
}

TEST_CASE("delay computations are pure") {
  const auto geometry = ArrayGeometry::circular(9, 0.17);
  const DelayVector first = circular_physical_delays(geometry, 1.234, kAir);
  const DelayVector second = circular_physical_delays(geometry, 1.234, kAir);
  CHECK(first.seconds == second.seconds);
}

TEST_CASE("geometry and medium validation") {
  CHECK_THROWS_AS(ArrayGeometry::linear(1, 0.06), InvalidGeometryError);
  CHECK_THROWS_AS(ArrayGeometry::circular(1, 0.1), InvalidGeometryError);
  CHECK_THROWS_AS(ArrayGeometry::linear(8, 0.0), InvalidGeometryError);
  CHECK_THROWS_AS(ArrayGeometry::linear(8, -0.06), InvalidGeometryError);
  CHECK_THROWS_AS(ArrayGeometry::circular(8, -1.0), InvalidGeometryError);

  const auto linear = ArrayGeometry::linear(8, 0.06);
  const auto circular = ArrayGeometry::circular(8, 0.1);
  CHECK_THROWS_AS(linear_physical_delays(circular, 0.0, kAir), GeometryMismatchError);
  CHECK_THROWS_AS(circular_physical_delays(linear, 0.0, kAir), GeometryMismatchError);
  CHECK_THROWS_AS(linear.radius(), GeometryMismatchError);

  CHECK_THROWS_AS(linear_physical_delays(linear, 0.0, Medium{0.0}), ParameterError);
  CHECK_THROWS_AS(linear_physical_delays(linear, 0.0, Medium{-10.0}), ParameterError);
}
