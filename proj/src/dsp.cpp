#include "mimo/dsp.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

namespace mimo::dsp {

namespace {

static_assert(sizeof(Complex) == sizeof(fftw_complex));

// Planner calls are not thread-safe in FFTW; execution with the new-array
// interface is. Plans are cached per (length, batch, direction).
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, std::size_t howmany, int sign) {
    const auto key = std::make_tuple(n, howmany, sign);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    std::vector<Complex> scratch(n * howmany);
    auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
    const int len = static_cast<int>(n);
    fftw_plan plan =
        fftw_plan_many_dft(1, &len, static_cast<int>(howmany), buf, nullptr, 1, len, buf,
                           nullptr, 1, len, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(std::span<Complex> data, std::size_t n, int sign) {
  if (n == 0 || data.empty()) return;
  if (data.size() % n != 0) {
    throw std::invalid_argument("FFT batch size is not a multiple of the transform length");
  }
  fftw_plan plan = cache().get(n, data.size() / n, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void fft_forward(std::span<Complex> x) { run(x, x.size(), FFTW_FORWARD); }
void fft_inverse(std::span<Complex> x) { run(x, x.size(), FFTW_BACKWARD); }
void fft_forward_batch(std::span<Complex> data, std::size_t n) { run(data, n, FFTW_FORWARD); }
void fft_inverse_batch(std::span<Complex> data, std::size_t n) { run(data, n, FFTW_BACKWARD); }

void transpose(std::span<const Complex> in, std::size_t rows, std::size_t cols,
               std::span<Complex> out) {
  if (in.size() != rows * cols || out.size() != rows * cols) {
    throw std::invalid_argument("transpose: size mismatch");
  }
  constexpr std::size_t kBlock = 32;
  for (std::size_t r0 = 0; r0 < rows; r0 += kBlock) {
    for (std::size_t c0 = 0; c0 < cols; c0 += kBlock) {
      const std::size_t r1 = std::min(rows, r0 + kBlock);
      const std::size_t c1 = std::min(cols, c0 + kBlock);
      for (std::size_t r = r0; r < r1; ++r) {
        for (std::size_t c = c0; c < c1; ++c) out[c * rows + r] = in[r * cols + c];
      }
    }
  }
}

std::string_view to_string(Window w) {
  switch (w) {
    case Window::rectangular:
      return "rect";
    case Window::hann:
      return "hann";
  }
  return "rect";
}

Window parse_window(std::string_view name) {
  if (name == "rect" || name == "rectangular") return Window::rectangular;
  if (name == "hann") return Window::hann;
  throw std::invalid_argument("unknown window '" + std::string(name) + "' (rect|hann)");
}

std::vector<double> window_weights(Window w, std::size_t n) {
  std::vector<double> weights(n, 1.0);
  if (w == Window::hann) {
    for (std::size_t i = 0; i < n; ++i) {
      weights[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    }
  }
  return weights;
}

}  // namespace mimo::dsp
