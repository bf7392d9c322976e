#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mimo/model.hpp"

// Thin FFT layer over FFTW plus the few array helpers the processing chains
// share. Plans use FFTW_ESTIMATE so the arithmetic is identical run to run.
namespace mimo::dsp {

// In-place unnormalized DFT, X[k] = sum x[n] exp(-j 2 pi k n / N).
void fft_forward(std::span<Complex> x);
// In-place unnormalized inverse, x[n] = sum X[k] exp(+j 2 pi k n / N).
void fft_inverse(std::span<Complex> x);

// `data` holds data.size()/n contiguous length-n transforms.
void fft_forward_batch(std::span<Complex> data, std::size_t n);
void fft_inverse_batch(std::span<Complex> data, std::size_t n);

// Signed frequency index of DFT bin k on [-N/2, N/2).
inline long signed_bin(std::size_t k, std::size_t n) {
  const long kk = static_cast<long>(k);
  const long nn = static_cast<long>(n);
  return (2 * kk >= nn) ? kk - nn : kk;
}

// Row-major rows x cols -> cols x rows.
void transpose(std::span<const Complex> in, std::size_t rows, std::size_t cols,
               std::span<Complex> out);

enum class Window { rectangular, hann };

std::string_view to_string(Window w);
Window parse_window(std::string_view name);

// Periodic Hann (0.5 - 0.5 cos(2 pi n / N)); its DFT occupies exactly 3 bins.
std::vector<double> window_weights(Window w, std::size_t n);

}  // namespace mimo::dsp
