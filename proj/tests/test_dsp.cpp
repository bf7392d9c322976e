#include <doctest.h>

#include <cmath>

#include "mimo/dsp.hpp"
#include "mimo/rng.hpp"

using namespace mimo;

namespace {

std::vector<Complex> naive_dft(const std::vector<Complex>& x, int sign) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      out[k] += x[i] * std::polar(1.0, sign * kTwoPi * static_cast<double>((k * i) % n) /
                                           static_cast<double>(n));
    }
  }
  return out;
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_SUITE("dsp") {
  TEST_CASE("FFT matches a direct DFT") {
    Rng rng(3);
    for (std::size_t n : {1u, 2u, 5u, 16u, 63u, 100u}) {
      std::vector<Complex> x(n);
      for (auto& v : x) v = rng.complex_gaussian(1.0);
      auto fwd = x;
      dsp::fft_forward(fwd);
      CHECK(max_abs_diff(fwd, naive_dft(x, -1)) < 1e-9 * static_cast<double>(n));
      auto inv = x;
      dsp::fft_inverse(inv);
      CHECK(max_abs_diff(inv, naive_dft(x, +1)) < 1e-9 * static_cast<double>(n));
    }
  }

  TEST_CASE("batched transforms equal per-row transforms") {
    Rng rng(4);
    const std::size_t n = 12, rows = 5;
    std::vector<Complex> data(n * rows);
    for (auto& v : data) v = rng.complex_gaussian(1.0);
    auto batch = data;
    dsp::fft_forward_batch(batch, n);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<Complex> row(data.begin() + r * n, data.begin() + (r + 1) * n);
      dsp::fft_forward(row);
      CHECK(max_abs_diff(row, std::span(batch).subspan(r * n, n)) < 1e-12);
    }
    CHECK_THROWS(dsp::fft_forward_batch(batch, 7));
  }

  TEST_CASE("signed bins") {
    CHECK(dsp::signed_bin(0, 8) == 0);
    CHECK(dsp::signed_bin(3, 8) == 3);
    CHECK(dsp::signed_bin(4, 8) == -4);
    CHECK(dsp::signed_bin(7, 8) == -1);
    CHECK(dsp::signed_bin(511, 1023) == 511);
    CHECK(dsp::signed_bin(512, 1023) == -511);
  }

  TEST_CASE("transpose") {
    std::vector<Complex> in(6);
    for (std::size_t i = 0; i < 6; ++i) in[i] = static_cast<double>(i);
    std::vector<Complex> out(6);
    dsp::transpose(in, 2, 3, out);
    CHECK(out == std::vector<Complex>{0.0, 3.0, 1.0, 4.0, 2.0, 5.0});

    Rng rng(1);
    std::vector<Complex> big(300 * 97), t(big.size()), back(big.size());
    for (auto& v : big) v = rng.complex_gaussian(1.0);
    dsp::transpose(big, 300, 97, t);
    dsp::transpose(t, 97, 300, back);
    CHECK(back == big);
  }

  TEST_CASE("windows") {
    CHECK(dsp::parse_window("rect") == dsp::Window::rectangular);
    CHECK(dsp::parse_window("hann") == dsp::Window::hann);
    CHECK_THROWS(dsp::parse_window("kaiser"));
    CHECK(dsp::to_string(dsp::Window::hann) == "hann");

    const auto rect = dsp::window_weights(dsp::Window::rectangular, 4);
    CHECK(rect == std::vector<double>(4, 1.0));

    // Periodic Hann: DFT is -N/4, N/2, -N/4 on bins -1, 0, 1 and zero elsewhere.
    const std::size_t n = 64;
    const auto w = dsp::window_weights(dsp::Window::hann, n);
    std::vector<Complex> spec(w.begin(), w.end());
    dsp::fft_forward(spec);
    CHECK(std::abs(spec[0] - Complex(n / 2.0, 0.0)) < 1e-9);
    CHECK(std::abs(spec[1] - Complex(-(n / 4.0), 0.0)) < 1e-9);
    CHECK(std::abs(spec[n - 1] - Complex(-(n / 4.0), 0.0)) < 1e-9);
    double rest = 0.0;
    for (std::size_t k = 2; k + 1 < n; ++k) rest += std::abs(spec[k]);
    CHECK(rest < 1e-9);
  }
}
