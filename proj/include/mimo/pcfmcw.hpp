#pragma once

#include <span>

#include "mimo/fmcw.hpp"
#include "mimo/model.hpp"
#include "mimo/rng.hpp"
#include "mimo/sequences.hpp"

// Phase-coded FMCW: every transmitter sends the same chirp sequence with its
// own intra-chirp binary code (one chip per fast-time sample), all at once.
// After dechirping, each echo carries its code delayed by the target delay.
// A group-delay filter advances the component at beat frequency f by f/k,
// realigning the codes before per-transmitter decoding.
namespace mimo::pcfmcw {

struct PcFmcwConfig {
  // n_fast is also the code length. The default chirp gives a unit
  // dispersion figure (see dispersion_samples()).
  fmcw::FmcwConfig chirp{.carrier_hz = 78.6e9,
                         .bandwidth_hz = 150e6,
                         .chirp_duration_s = 1023.0 * 1023.0 / 150e6,
                         .n_fast = 1023,
                         .n_slow = 1024,
                         .window = dsp::Window::rectangular};

  std::size_t code_length() const { return chirp.n_fast; }

  // Spread in samples of the filter's group delay across the sampled band,
  // n_fast^2 / (B Tc). Codes with one chip per sample are smeared over about
  // this many chips by the filter.
  double dispersion_samples() const {
    const double n = static_cast<double>(chirp.n_fast);
    return n * n / (chirp.bandwidth_hz * chirp.chirp_duration_s);
  }

  // Beat frequencies must stay on the non-negative half of the signed grid
  // the filter works on, i.e. below fs/2.
  double max_range_m() const { return 0.5 * chirp.max_range_m(); }

  void validate() const;
};

// H(f) = exp(j pi f^2 / k)
Complex gdf_response(const PcFmcwConfig& config, double frequency_hz);

// Per chirp m, transmitter q and target:
//   alpha * code_q(n - tau fs) * exp(j2pi k tau t_n) * exp(j2pi fD m Tc) * exp(-j2pi fc tau)
// The code delay is a circular shift; whole-sample delays index the chips
// directly, fractional delays use the band-limited (DFT phase-ramp) shift.
FastSlowMatrix simulate_pcfmcw_beat(const PcFmcwConfig& config, std::span<const PhaseCode> codes,
                                    const Scene& scene, Rng& rng);

// Per chirp: FFT, multiply by H on the signed grid [-fs/2, fs/2), inverse FFT.
FastSlowMatrix group_delay_filter(const PcFmcwConfig& config, const FastSlowMatrix& y);

// Multiply every chirp by the code; applying it twice restores the input.
FastSlowMatrix decode(const FastSlowMatrix& y, const PhaseCode& code);

// decode() followed by the FMCW range/Doppler processing with every chirp
// owned (normalized by n_slow).
RangeDopplerMap decode_and_process(const PcFmcwConfig& config, const FastSlowMatrix& filtered,
                                   const PhaseCode& code, std::size_t tx);

}  // namespace mimo::pcfmcw
