#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "mimo/model.hpp"

namespace testing {

inline mimo::PointTarget on_grid(double range_bin, double doppler_bin, double range_bin_m,
                                 double doppler_bin_mps, mimo::Complex amp = {1.0, 0.0}) {
  return {range_bin * range_bin_m, doppler_bin * doppler_bin_mps, amp};
}

inline double max_abs(std::span<const mimo::Complex> x) {
  double m = 0.0;
  for (const auto& v : x) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(std::span<const mimo::Complex> a, std::span<const mimo::Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_mag_diff(std::span<const mimo::Complex> a, std::span<const mimo::Complex> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(std::abs(a[i]) - std::abs(b[i])));
  }
  return m;
}

// Largest magnitude outside one bin.
inline double max_off_peak(const mimo::RangeDopplerMap& map, std::size_t r, std::size_t d) {
  double m = 0.0;
  for (std::size_t i = 0; i < map.n_range(); ++i) {
    for (std::size_t j = 0; j < map.n_doppler(); ++j) {
      if (i != r || j != d) m = std::max(m, std::abs(map.at(i, j)));
    }
  }
  return m;
}

}  // namespace testing
