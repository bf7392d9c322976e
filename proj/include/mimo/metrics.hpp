#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "mimo/model.hpp"

namespace mimo::metrics {

// ISLR values below this are reported as the floor.
inline constexpr double kIslrFloorDb = -100.0;
inline constexpr std::size_t kDefaultGuard = 1;

struct Peak {
  std::size_t range_bin = 0;
  std::size_t doppler_bin = 0;
  double magnitude = 0.0;
};

// argmax |map|, ties to the smallest range bin, then smallest Doppler bin.
// Throws std::domain_error for an all-zero map.
Peak find_peak(const RangeDopplerMap& map);

enum class CutAxis {
  range,    // all range bins at the peak's Doppler bin
  doppler,  // all Doppler bins at the peak's range bin
};

struct LobeEnergy {
  double mainlobe = 0.0;
  double sidelobe = 0.0;
};

// Mainlobe = bins within +-guard of `peak` (cyclic).
LobeEnergy cut_energy(std::span<const Complex> cut, std::size_t peak, std::size_t guard);
// Mainlobe = the (2 guard + 1)^2 cyclic neighbourhood of the peak.
LobeEnergy map_energy(const RangeDopplerMap& map, const Peak& peak, std::size_t guard);

// 10 log10(sidelobe / mainlobe), floored at kIslrFloorDb.
double islr_db(const LobeEnergy& e);

double islr_cut(const RangeDopplerMap& map, CutAxis axis, const Peak& peak,
                std::size_t guard = kDefaultGuard);
double islr_2d(const RangeDopplerMap& map, const Peak& peak, std::size_t guard = kDefaultGuard);

struct IslrReport {
  std::string waveform;
  std::size_t n_tx = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double islr_range_db = 0.0;
  double islr_doppler_db = 0.0;
  double islr_2d_db = 0.0;
  std::size_t peak_range_bin = 0;
  std::size_t peak_doppler_bin = 0;
  double peak_mag = 0.0;
};

// Peak plus the three ISLR figures; identification fields are left for the caller.
IslrReport measure(const RangeDopplerMap& map, std::size_t guard = kDefaultGuard);

}  // namespace mimo::metrics
