#pragma once

#include <span>

#include "mimo/dsp.hpp"
#include "mimo/model.hpp"
#include "mimo/rng.hpp"
#include "mimo/sequences.hpp"

// Code-division PMCW. All transmitters send their binary code continuously;
// the receiver samples one sample per chip and separates transmitters by
// circular correlation with each reference code.
namespace mimo::pmcw {

struct PmcwConfig {
  double carrier_hz = 78.6e9;
  double chip_rate_hz = 150e6;
  std::size_t code_length = 1023;
  std::size_t n_rep = 256;  // code repetitions = slow-time samples
  dsp::Window window = dsp::Window::rectangular;  // slow time only

  double sample_rate() const { return chip_rate_hz; }
  double repetition_period_s() const { return static_cast<double>(code_length) / chip_rate_hz; }
  double range_bin_m() const { return kSpeedOfLight / (2.0 * chip_rate_hz); }
  double doppler_bin_hz() const {
    return 1.0 / (static_cast<double>(n_rep) * repetition_period_s());
  }
  double doppler_bin_mps() const { return velocity_for_doppler(doppler_bin_hz(), carrier_hz); }
  double max_velocity_mps() const {
    return velocity_for_doppler(0.5 / repetition_period_s(), carrier_hz);
  }

  void validate() const;
};

// Delay rounded to whole chips.
std::size_t delay_in_chips(const PmcwConfig& config, double delay_s);

// rx(:, r) = sum_q sum_targets alpha * circshift(code_q, d) * exp(j2pi fD r M/fs) * exp(-j2pi fc tau)
// Result is [code_length x n_rep].
FastSlowMatrix simulate_pmcw_rx(const PmcwConfig& config, std::span<const PhaseCode> codes,
                                const Scene& scene, Rng& rng);

// Circular correlation against codes[tx] per repetition (scaled by 1/M), then
// a Doppler DFT across repetitions. A matched unit target peaks at n_rep.
RangeDopplerMap process_pmcw(const PmcwConfig& config, std::span<const PhaseCode> codes,
                             const FastSlowMatrix& rx, std::size_t tx);

}  // namespace mimo::pmcw
