#include <doctest.h>

#include <cmath>
#include <limits>

#include "mimo/dsp.hpp"
#include "mimo/model.hpp"
#include "mimo/rng.hpp"

using namespace mimo;

TEST_SUITE("model") {
  TEST_CASE("delay and Doppler of a point target") {
    const auto zero = target_to_delay_doppler({0.0, 0.0}, 78.6e9);
    CHECK(zero.delay_s == 0.0);
    CHECK(zero.doppler_hz == 0.0);

    const auto one_us = target_to_delay_doppler({149.896229, 0.0}, 1e9);
    CHECK(one_us.delay_s == doctest::Approx(1e-6).epsilon(1e-12));

    // 2*30/c and 2*10*78.6e9/c evaluated by hand
    const auto dd = target_to_delay_doppler({30.0, 10.0}, 78.6e9);
    CHECK(dd.delay_s == doctest::Approx(200.138e-9).epsilon(1e-5));
    CHECK(dd.doppler_hz == doctest::Approx(5243.6).epsilon(1e-5));

    CHECK_THROWS_AS(target_to_delay_doppler({1.0, 0.0}, 0.0), std::invalid_argument);
  }

  TEST_CASE("unit conversions invert each other") {
    const double tau = 3.7e-7;
    CHECK(target_to_delay_doppler({range_for_delay(tau), 0.0}, 1e9).delay_s ==
          doctest::Approx(tau).epsilon(1e-14));
    const double fd = -1234.5;
    CHECK(target_to_delay_doppler({0.0, velocity_for_doppler(fd, 77e9)}, 77e9).doppler_hz ==
          doctest::Approx(fd).epsilon(1e-12));
  }

  TEST_CASE("closing targets have positive Doppler") {
    CHECK(target_to_delay_doppler({10.0, 5.0}, 77e9).doppler_hz > 0.0);
    CHECK(target_to_delay_doppler({10.0, -5.0}, 77e9).doppler_hz < 0.0);
  }

  TEST_CASE("Parseval holds for random buffers") {
    Rng rng(99);
    for (std::size_t n : {1u, 7u, 64u, 1000u, 1023u}) {
      std::vector<Complex> x(n);
      for (auto& v : x) v = rng.complex_gaussian(2.0);
      CHECK(spectral_energy(x) == doctest::Approx(energy(x)).epsilon(1e-9));
    }
  }

  TEST_CASE("unit_phasor keeps precision for large arguments") {
    CHECK(std::abs(unit_phasor(0.25) - Complex(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(unit_phasor(1e9 + 0.5) - Complex(-1.0, 0.0)) < 1e-12);
    CHECK(std::abs(unit_phasor(-3.75) - Complex(0.0, 1.0)) < 1e-15);
  }

  TEST_CASE("scene validation and finiteness") {
    Scene s;
    CHECK_NOTHROW(s.validate());
    s.noise_power = -1.0;
    CHECK_THROWS(s.validate());
    s.noise_power = 0.0;
    s.targets.push_back({std::numeric_limits<double>::quiet_NaN(), 0.0});
    CHECK_THROWS(s.validate());

    std::vector<Complex> x{{1.0, 2.0}, {0.0, 0.0}};
    CHECK(all_finite(x));
    x[1] = {std::numeric_limits<double>::infinity(), 0.0};
    CHECK_FALSE(all_finite(x));
  }

  TEST_CASE("fast-slow layout keeps sweeps contiguous") {
    FastSlowMatrix m(3, 2);
    m.at(2, 1) = {5.0, 0.0};
    CHECK(m.sweep(1)[2] == Complex(5.0, 0.0));
    CHECK(m.data()[1 * 3 + 2] == Complex(5.0, 0.0));
    const std::vector<Complex> f{1.0, 2.0, 3.0};
    const std::vector<Complex> sl{{0.0, 1.0}, 2.0};
    m.add_outer(f, sl);
    CHECK(m.at(1, 0) == Complex(0.0, 2.0));
    CHECK(m.at(2, 1) == Complex(11.0, 0.0));
  }
}
