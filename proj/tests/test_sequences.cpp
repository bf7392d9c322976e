#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>

#include "mimo/sequences.hpp"

using namespace mimo;

namespace {

// Brute-force state period of the register from the all-ones state.
std::uint64_t brute_period(std::uint32_t mask, int n) {
  const std::uint32_t full = (1U << n) - 1;
  const std::uint32_t taps = (mask >> 1) & full;
  std::uint32_t state = full;
  for (std::uint64_t k = 1; k <= full + 1; ++k) {
    const std::uint32_t fb = static_cast<std::uint32_t>(std::popcount(state & taps) & 1);
    state = ((state << 1) | fb) & full;
    if (state == full) return k;
  }
  return 0;
}

std::vector<std::int64_t> direct_correlation(const PhaseCode& a, const PhaseCode& b) {
  const std::size_t m = a.size();
  std::vector<std::int64_t> r(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) r[k] += a[i] * b[(i + k) % m];
  }
  return r;
}

std::uint64_t euler_phi(std::uint64_t v) {
  std::uint64_t result = v;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p == 0) {
      while (v % p == 0) v /= p;
      result -= result / p;
    }
  }
  if (v > 1) result -= result / v;
  return result;
}

}  // namespace

TEST_SUITE("sequences") {
  TEST_CASE("polynomial basics") {
    const BinaryPolynomial p(0b1011);
    CHECK(p.degree() == 3);
    CHECK(p.to_string() == "x^3+x+1");
    CHECK(BinaryPolynomial(0b10000001001).to_string() == "x^10+x^3+1");
  }

  TEST_CASE("primitivity") {
    CHECK(is_primitive(BinaryPolynomial(0b1011)));
    CHECK_FALSE(is_primitive(BinaryPolynomial(0b1111)));  // (x+1)^3
    CHECK_FALSE(is_primitive(BinaryPolynomial(0b11111)));  // divides x^5 - 1, order 5
    CHECK_THROWS(is_primitive(BinaryPolynomial(0b1)));
    CHECK_THROWS(is_primitive(BinaryPolynomial(1U << 17 | 1U)));
  }

  TEST_CASE("primitivity agrees with a brute-force period search") {
    for (int n = 3; n <= 10; ++n) {
      for (std::uint32_t mask = (1U << n) | 1U; mask < (1U << (n + 1)); mask += 2) {
        const bool brute = brute_period(mask, n) == (1U << n) - 1;
        if (is_primitive(BinaryPolynomial(mask)) != brute) {
          FAIL("mismatch for mask " << mask);
        }
      }
    }
  }

  TEST_CASE("family sizes equal phi(2^n - 1) / n") {
    const std::size_t expected[] = {2, 2, 6, 6, 18, 16, 48, 60};
    for (int n = 3; n <= 10; ++n) {
      const auto family = enumerate_family(n);
      CHECK(family.size() == expected[n - 3]);
      CHECK(family.size() == euler_phi((1ULL << n) - 1) / static_cast<std::uint64_t>(n));
    }
    const auto polys = primitive_polynomials(10);
    REQUIRE(polys.size() == 60);
    CHECK(polys[0].mask() == 1033);
    CHECK(polys[1].mask() == 1051);
    CHECK(polys[2].mask() == 1063);
    CHECK(polys[3].mask() == 1069);
    CHECK(std::is_sorted(polys.begin(), polys.end(),
                         [](auto a, auto b) { return a.mask() < b.mask(); }));
    const auto p5 = primitive_polynomials(5);
    CHECK(std::vector<std::uint32_t>{p5[0].mask(), p5[1].mask(), p5[2].mask(), p5[3].mask()} ==
          std::vector<std::uint32_t>{37, 41, 47, 55});
  }

  TEST_CASE("golden short codes") {
    CHECK(lfsr_msequence(BinaryPolynomial(0b1011), 0b111).chips ==
          std::vector<std::int8_t>{-1, -1, -1, 1, -1, 1, 1});
    CHECK(lfsr_msequence(BinaryPolynomial(0b10011), 0b1111).chips ==
          std::vector<std::int8_t>{-1, -1, -1, -1, 1, -1, 1, -1, -1, 1, 1, -1, 1, 1, 1});
  }

  TEST_CASE("lfsr errors") {
    CHECK_THROWS(lfsr_msequence(BinaryPolynomial(0b1011), 0));
    CHECK_THROWS(lfsr_msequence(BinaryPolynomial(0b1011), 0b1000));
    CHECK_THROWS(lfsr_msequence(BinaryPolynomial(0b1111), 1));
  }

  TEST_CASE("m-sequence balance, length and state coverage") {
    for (int n = 3; n <= 10; ++n) {
      for (const PhaseCode& c : enumerate_family(n)) {
        CHECK(c.size() == (1U << n) - 1);
        const auto minus = std::count(c.chips.begin(), c.chips.end(), std::int8_t{-1});
        const auto plus = std::count(c.chips.begin(), c.chips.end(), std::int8_t{1});
        CHECK(minus == (1 << (n - 1)));
        CHECK(plus == (1 << (n - 1)) - 1);
        // every n-chip window is a distinct nonzero register state
        std::set<std::uint32_t> windows;
        for (std::size_t i = 0; i < c.size(); ++i) {
          std::uint32_t w = 0;
          for (int b = 0; b < n; ++b) w = (w << 1) | (c[(i + b) % c.size()] < 0 ? 1U : 0U);
          windows.insert(w);
        }
        CHECK(windows.size() == c.size());
        CHECK_FALSE(windows.contains(0));
      }
    }
  }

  TEST_CASE("cyclic correlation") {
    const PhaseCode ones = PhaseCode::all_ones(7);
    CHECK(cyclic_correlate(ones, ones) == std::vector<std::int64_t>(7, 7));

    for (const PhaseCode& c : enumerate_family(3)) {
      const auto r = cyclic_correlate(c, c);
      CHECK(r == direct_correlation(c, c));
      CHECK(r[0] == 7);
      for (std::size_t k = 1; k < 7; ++k) CHECK(r[k] == -1);
    }
    const auto fam5 = enumerate_family(5);
    CHECK(cyclic_correlate(fam5[0], fam5[3]) == direct_correlation(fam5[0], fam5[3]));
    CHECK_THROWS(cyclic_correlate(fam5[0], ones));
  }

  TEST_CASE("degree-10 family statistics") {
    const auto stats = family_statistics(10);
    REQUIRE(stats.size() == 60);
    const auto family = enumerate_family(10);
    std::int64_t worst = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
      CHECK(stats[i].length == 1023);
      CHECK(stats[i].two_valued);
      CHECK(stats[i].autocorr_peak == 1023);
      CHECK(stats[i].autocorr_max_sidelobe == 1);
      CHECK(stats[i].max_cross < 1023);
      worst = std::max(worst, stats[i].max_cross);
    }
    // direct check of one pair against the FFT-based statistic
    const auto direct = direct_correlation(family[0], family[1]);
    std::int64_t m01 = 0;
    for (auto v : direct) m01 = std::max<std::int64_t>(m01, std::llabs(v));
    CHECK(m01 <= stats[0].max_cross);
    CHECK(worst == 383);
  }

  TEST_CASE("degree for length") {
    CHECK(msequence_degree_for_length(1023) == 10);
    CHECK(msequence_degree_for_length(7) == 3);
    CHECK(msequence_degree_for_length(1024) == -1);
  }
}
