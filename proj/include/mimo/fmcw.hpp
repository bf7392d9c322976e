#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mimo/dsp.hpp"
#include "mimo/model.hpp"
#include "mimo/rng.hpp"

// Random TDM-MIMO chirp-sequence FMCW: every chirp is sent by exactly one
// transmitter chosen by a pseudo-random balanced schedule, so each channel
// sees a non-uniformly subsampled slow time.
namespace mimo::fmcw {

struct FmcwConfig {
  double carrier_hz = 78.6e9;
  double bandwidth_hz = 150e6;
  double chirp_duration_s = 20e-6;
  std::size_t n_fast = 1024;  // samples per chirp
  std::size_t n_slow = 1024;  // chirps per frame
  dsp::Window window = dsp::Window::rectangular;

  double slope() const { return bandwidth_hz / chirp_duration_s; }
  double sample_rate() const { return static_cast<double>(n_fast) / chirp_duration_s; }
  double range_bin_m() const { return kSpeedOfLight / (2.0 * bandwidth_hz); }
  double doppler_bin_hz() const {
    return 1.0 / (static_cast<double>(n_slow) * chirp_duration_s);
  }
  double doppler_bin_mps() const { return velocity_for_doppler(doppler_bin_hz(), carrier_hz); }

  // Complex beat spectrum covers [0, fs): n_fast range bins.
  double max_range_m() const { return static_cast<double>(n_fast) * range_bin_m(); }
  // |fD| < 1 / (2 Tc)
  double max_velocity_mps() const {
    return velocity_for_doppler(0.5 / chirp_duration_s, carrier_hz);
  }

  void validate() const;
};

struct TdmSchedule {
  std::size_t n_tx = 1;
  std::vector<std::uint32_t> tx_of_chirp;

  std::vector<std::size_t> counts() const;
};

// The sequence 0,1,..,n_tx-1 repeated ceil(n_slow/n_tx) times, truncated to
// n_slow chirps (so the first transmitters take the remainder), then permuted.
TdmSchedule make_random_schedule(Rng& rng, std::size_t n_slow, std::size_t n_tx);

// Dechirped beat signal under the stop-and-hop model, one column per chirp.
// Transmitters are colocated, so the schedule only has to be consistent with
// the frame; the echo itself does not depend on which transmitter fired.
FastSlowMatrix simulate_beat(const FmcwConfig& config, const TdmSchedule& schedule,
                             const Scene& scene, Rng& rng);

// Channel `tx`: keep owned chirps, zero the rest, window + range FFT, then a
// Doppler FFT over the full slow-time grid, scaled by 1 / (owned slow weight).
RangeDopplerMap process_fmcw(const FmcwConfig& config, const TdmSchedule& schedule,
                             const FastSlowMatrix& beat, std::size_t tx);

// Shared 2D processor for chirp sequences. `slow_weights` multiplies each
// chirp (zero drops it); the map is divided by the sum of those weights.
RangeDopplerMap chirp_sequence_map(const FmcwConfig& config, const FastSlowMatrix& beat,
                                   std::span<const double> slow_weights, std::size_t tx);

}  // namespace mimo::fmcw
