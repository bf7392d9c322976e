#include <doctest.h>

#include <cmath>

#include "mimo/metrics.hpp"
#include "mimo/pmcw.hpp"
#include "mimo/sequences.hpp"
#include "support.hpp"

using namespace mimo;
using testing::on_grid;

namespace {

pmcw::PmcwConfig small_config() {
  pmcw::PmcwConfig c;
  c.code_length = 127;
  c.n_rep = 64;
  return c;
}

Scene one_target(const pmcw::PmcwConfig& c, double rb, double db, Complex amp = {1.0, 0.0}) {
  return Scene{{on_grid(rb, db, c.range_bin_m(), c.doppler_bin_mps(), amp)}, 0.0};
}

}  // namespace

TEST_SUITE("pmcw") {
  TEST_CASE("empty scene gives zeros") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    Rng rng(1);
    const auto rx = pmcw::simulate_pmcw_rx(c, std::span(codes).first(2), Scene{}, rng);
    CHECK(testing::max_abs(rx.data()) == 0.0);
  }

  TEST_CASE("static target at zero delay repeats the code") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    Rng rng(1);
    const auto rx = pmcw::simulate_pmcw_rx(c, std::span(codes).first(1), one_target(c, 0, 0), rng);
    for (std::size_t r = 0; r < c.n_rep; ++r) {
      for (std::size_t n = 0; n < c.code_length; ++n) {
        CHECK(std::abs(rx.at(n, r) - Complex(codes[0][n], 0.0)) < 1e-12);
      }
    }
  }

  TEST_CASE("two transmitters superpose shifted codes") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    Rng rng(1);
    const auto scene = one_target(c, 5, 3);
    const auto rx = pmcw::simulate_pmcw_rx(c, std::span(codes).first(2), scene, rng);
    const auto [tau, fd] = target_to_delay_doppler(scene.targets[0], c.carrier_hz);
    CHECK(pmcw::delay_in_chips(c, tau) == 5);
    const Complex gain = unit_phasor(-c.carrier_hz * tau);
    for (std::size_t r : {0u, 1u, 40u}) {
      const Complex doppler = unit_phasor(fd * r * c.repetition_period_s());
      for (std::size_t n = 0; n < c.code_length; ++n) {
        const std::size_t i = (n + c.code_length - 5) % c.code_length;
        const Complex expected = gain * doppler * static_cast<double>(codes[0][i] + codes[1][i]);
        CHECK(std::abs(rx.at(n, r) - expected) < 1e-9);
      }
    }
  }

  TEST_CASE("matched single-transmitter map") {
    pmcw::PmcwConfig c;  // M = 1023, N_rep = 256
    const auto codes = enumerate_family(10);
    Rng rng(1);
    const auto one = std::span(codes).first(1);
    const auto map = pmcw::process_pmcw(c, one, pmcw::simulate_pmcw_rx(c, one, one_target(c, 100, 37), rng), 0);
    const auto r = metrics::measure(map);
    CHECK(r.peak_range_bin == 100);
    CHECK(r.peak_doppler_bin == 37);
    CHECK(r.peak_mag == doctest::Approx(256.0).epsilon(1e-9));
    // off-peak lags sit at -1/M of the peak
    for (std::size_t k : {0u, 1u, 99u, 101u, 700u}) {
      CHECK(std::abs(map.at(k, 37)) == doctest::Approx(256.0 / 1023.0).epsilon(1e-9));
    }
    const double expected = 10.0 * std::log10(1020.0 / (1023.0 * 1023.0 + 2.0));
    CHECK(r.islr_range_db == doctest::Approx(expected).epsilon(1e-6));
    CHECK(std::abs(r.islr_range_db + 30.1) < 0.1);
    CHECK(r.islr_doppler_db == metrics::kIslrFloorDb);
  }

  TEST_CASE("all-ones code on a flat scene correlates to a constant") {
    auto c = small_config();
    c.n_rep = 4;
    const std::vector<PhaseCode> codes{PhaseCode::all_ones(c.code_length)};
    Rng rng(1);
    const auto map = pmcw::process_pmcw(c, codes, pmcw::simulate_pmcw_rx(c, codes, one_target(c, 9, 0), rng), 0);
    for (std::size_t k = 0; k < c.code_length; ++k) {
      CHECK(std::abs(map.at(k, 0)) == doctest::Approx(std::abs(map.at(0, 0))).epsilon(1e-9));
    }
  }

  TEST_CASE("cross-channel leakage equals the cross-correlation") {
    const auto c = small_config();
    const auto family = enumerate_family(7);
    const std::vector<PhaseCode> codes{family[2], family[5]};
    // only code 0 transmits; process channel 1
    Rng rng(1);
    const auto rx = pmcw::simulate_pmcw_rx(c, std::span(codes).first(1), one_target(c, 0, 0), rng);
    const auto map = pmcw::process_pmcw(c, codes, rx, 1);
    const auto r = cyclic_correlate(codes[1], codes[0]);
    std::int64_t worst = 0;
    for (auto v : r) worst = std::max<std::int64_t>(worst, std::llabs(v));
    const double measured = testing::max_abs(map.data()) / static_cast<double>(c.n_rep);
    CHECK(measured == doctest::Approx(static_cast<double>(worst) / c.code_length).epsilon(1e-9));
    CHECK(measured < 1.0);
  }

  TEST_CASE("Doppler bins map linearly") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    const auto one = std::span(codes).first(1);
    for (int b : {-31, -1, 0, 5, 31}) {
      Rng rng(1);
      const auto map = pmcw::process_pmcw(c, one, pmcw::simulate_pmcw_rx(c, one, one_target(c, 20, b), rng), 0);
      const auto p = metrics::find_peak(map);
      CHECK(p.range_bin == 20);
      CHECK(p.doppler_bin == static_cast<std::size_t>((b + 64) % 64));
    }
  }

  TEST_CASE("many transmitters keep the Doppler cut clean") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    for (std::size_t n : {2u, 6u, 12u}) {
      Rng rng(1);
      const auto sub = std::span(codes).first(n);
      const auto r = metrics::measure(pmcw::process_pmcw(c, sub, pmcw::simulate_pmcw_rx(c, sub, one_target(c, 30, 7), rng), 0));
      CHECK(r.peak_range_bin == 30);
      CHECK(r.islr_doppler_db == metrics::kIslrFloorDb);
    }
  }

  TEST_CASE("errors") {
    const auto c = small_config();
    const auto codes = enumerate_family(7);
    Rng rng(1);
    CHECK_THROWS(pmcw::simulate_pmcw_rx(c, std::span(codes).first(1), one_target(c, 127, 0), rng));
    CHECK_THROWS(pmcw::simulate_pmcw_rx(c, std::span<const PhaseCode>{}, Scene{}, rng));
    const auto fam5 = enumerate_family(5);
    CHECK_THROWS(pmcw::simulate_pmcw_rx(c, std::span(fam5).first(1), Scene{}, rng));
    const auto rx = pmcw::simulate_pmcw_rx(c, std::span(codes).first(1), Scene{}, rng);
    CHECK_THROWS(pmcw::process_pmcw(c, std::span(codes).first(1), rx, 1));
  }
}
