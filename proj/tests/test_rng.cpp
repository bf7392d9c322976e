#include <doctest.h>

#include <array>
#include <cstdint>

#include "mimo/rng.hpp"

using namespace mimo;

// Reference values from tests/oracles/rng_lfsr_oracle.py.
TEST_SUITE("rng") {
  TEST_CASE("splitmix64 reference stream") {
    Rng r(0);
    CHECK(r.next() == 0xE220A8397B1DCDAFULL);
    CHECK(r.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(r.next() == 0x06C45D188009454FULL);
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
  }

  TEST_CASE("trial seeds") {
    CHECK(derive_seed(1, 0) == 10451216379200822465ULL);
    CHECK(derive_seed(1, 1) == 16294208416658607535ULL);
    CHECK(derive_seed(1, 2) == 2092789425003139053ULL);
  }

  TEST_CASE("golden permutations") {
    Rng a(42);
    CHECK(uniform_permutation(a, 8) == std::vector<std::size_t>{4, 3, 2, 0, 7, 6, 1, 5});
    Rng b(7);
    CHECK(uniform_permutation(b, 10) ==
          std::vector<std::size_t>{9, 5, 8, 6, 1, 2, 4, 7, 0, 3});
    Rng c(1);
    CHECK(uniform_permutation(c, 1) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(uniform_permutation(c, 0), std::invalid_argument);
  }

  TEST_CASE("equal seeds give equal streams") {
    Rng a(123456789), b(123456789);
    bool same = true;
    for (int i = 0; i < 1'000'000; ++i) same = same && a.next() == b.next();
    CHECK(same);
  }

  TEST_CASE("position 0 of a 4-permutation is uniform") {
    Rng rng(2024);
    std::array<int, 4> hist{};
    const int draws = 100'000;
    for (int i = 0; i < draws; ++i) ++hist[uniform_permutation(rng, 4)[0]];
    for (int h : hist) CHECK(static_cast<double>(h) / draws == doctest::Approx(0.25).epsilon(0.04));
  }

  TEST_CASE("bounded draws and uniforms stay in range") {
    Rng rng(5);
    for (int i = 0; i < 10000; ++i) {
      CHECK(rng.below(3) < 3);
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
    }
    CHECK_THROWS(rng.below(0));
  }

  TEST_CASE("complex Gaussian power") {
    Rng rng(8);
    double p = 0.0;
    const int n = 200'000;
    for (int i = 0; i < n; ++i) p += std::norm(rng.complex_gaussian(3.0));
    CHECK(p / n == doctest::Approx(3.0).epsilon(0.02));
  }
}
