#include "mimo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mimo::metrics {

namespace {

void check_guard(std::size_t guard, std::size_t length) {
  if (2 * guard >= length) {
    throw std::invalid_argument("mainlobe guard " + std::to_string(guard) +
                                " must be smaller than half the cut length " +
                                std::to_string(length));
  }
}

// Offsets -guard..guard as distinct cyclic indices around `center`.
std::vector<std::size_t> neighbourhood(std::size_t center, std::size_t guard, std::size_t n) {
  std::vector<std::size_t> idx;
  idx.reserve(2 * guard + 1);
  for (std::size_t k = 0; k <= 2 * guard; ++k) idx.push_back((center + n + k - guard) % n);
  return idx;
}

}  // namespace

Peak find_peak(const RangeDopplerMap& map) {
  if (map.data().empty()) throw std::invalid_argument("find_peak: empty map");
  Peak best;
  double best_power = 0.0;
  for (std::size_t i = 0; i < map.n_range(); ++i) {
    const auto row = map.range_row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double p = std::norm(row[j]);
      if (p > best_power) {
        best_power = p;
        best = {i, j, 0.0};
      }
    }
  }
  if (best_power == 0.0) throw std::domain_error("find_peak: map is identically zero");
  best.magnitude = std::abs(map.at(best.range_bin, best.doppler_bin));
  return best;
}

LobeEnergy cut_energy(std::span<const Complex> cut, std::size_t peak, std::size_t guard) {
  check_guard(guard, cut.size());
  if (peak >= cut.size()) throw std::invalid_argument("cut_energy: peak index out of range");
  const std::size_t n = cut.size();
  LobeEnergy e;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t offset = (k + n - peak) % n;  // cyclic distance, one side
    const bool main = offset <= guard || n - offset <= guard;
    (main ? e.mainlobe : e.sidelobe) += std::norm(cut[k]);
  }
  return e;
}

LobeEnergy map_energy(const RangeDopplerMap& map, const Peak& peak, std::size_t guard) {
  check_guard(guard, map.n_range());
  check_guard(guard, map.n_doppler());
  if (peak.range_bin >= map.n_range() || peak.doppler_bin >= map.n_doppler()) {
    throw std::invalid_argument("map_energy: peak index out of range");
  }
  std::vector<bool> main_range(map.n_range(), false);
  std::vector<bool> main_doppler(map.n_doppler(), false);
  for (std::size_t i : neighbourhood(peak.range_bin, guard, map.n_range())) main_range[i] = true;
  for (std::size_t j : neighbourhood(peak.doppler_bin, guard, map.n_doppler())) {
    main_doppler[j] = true;
  }
  LobeEnergy e;
  for (std::size_t i = 0; i < map.n_range(); ++i) {
    const auto row = map.range_row(i);
    double row_side = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      const double p = std::norm(row[j]);
      if (main_range[i] && main_doppler[j]) {
        e.mainlobe += p;
      } else {
        row_side += p;
      }
    }
    e.sidelobe += row_side;
  }
  return e;
}

double islr_db(const LobeEnergy& e) {
  if (!(e.mainlobe > 0.0)) throw std::domain_error("ISLR undefined: mainlobe energy is zero");
  if (e.sidelobe <= 0.0) return kIslrFloorDb;
  return std::max(kIslrFloorDb, 10.0 * std::log10(e.sidelobe / e.mainlobe));
}

double islr_cut(const RangeDopplerMap& map, CutAxis axis, const Peak& peak, std::size_t guard) {
  if (axis == CutAxis::doppler) {
    return islr_db(cut_energy(map.range_row(peak.range_bin), peak.doppler_bin, guard));
  }
  std::vector<Complex> cut(map.n_range());
  for (std::size_t i = 0; i < map.n_range(); ++i) cut[i] = map.at(i, peak.doppler_bin);
  return islr_db(cut_energy(cut, peak.range_bin, guard));
}

double islr_2d(const RangeDopplerMap& map, const Peak& peak, std::size_t guard) {
  return islr_db(map_energy(map, peak, guard));
}

IslrReport measure(const RangeDopplerMap& map, std::size_t guard) {
  const Peak peak = find_peak(map);
  IslrReport r;
  r.islr_range_db = islr_cut(map, CutAxis::range, peak, guard);
  r.islr_doppler_db = islr_cut(map, CutAxis::doppler, peak, guard);
  r.islr_2d_db = islr_2d(map, peak, guard);
  r.peak_range_bin = peak.range_bin;
  r.peak_doppler_bin = peak.doppler_bin;
  r.peak_mag = peak.magnitude;
  return r;
}

}  // namespace mimo::metrics
