#include "mimo/fmcw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mimo::fmcw {

void FmcwConfig::validate() const {
  if (!(carrier_hz > 0.0) || !(bandwidth_hz > 0.0) || !(chirp_duration_s > 0.0)) {
    throw std::invalid_argument("FMCW carrier, bandwidth and chirp duration must be > 0");
  }
  if (n_fast < 2 || n_slow < 2) {
    throw std::invalid_argument("FMCW frame needs at least 2 fast-time and 2 slow-time samples");
  }
}

std::vector<std::size_t> TdmSchedule::counts() const {
  std::vector<std::size_t> c(n_tx, 0);
  for (std::uint32_t tx : tx_of_chirp) ++c.at(tx);
  return c;
}

TdmSchedule make_random_schedule(Rng& rng, std::size_t n_slow, std::size_t n_tx) {
  if (n_tx == 0) throw std::invalid_argument("TDM schedule needs at least one transmitter");
  if (n_tx > n_slow) {
    throw std::invalid_argument("TDM schedule: n_tx (" + std::to_string(n_tx) +
                                ") exceeds the number of chirps (" + std::to_string(n_slow) + ")");
  }
  TdmSchedule schedule;
  schedule.n_tx = n_tx;
  schedule.tx_of_chirp.resize(n_slow);
  for (std::size_t m = 0; m < n_slow; ++m) {
    schedule.tx_of_chirp[m] = static_cast<std::uint32_t>(m % n_tx);
  }
  shuffle(rng, std::span<std::uint32_t>(schedule.tx_of_chirp));
  return schedule;
}

FastSlowMatrix simulate_beat(const FmcwConfig& config, const TdmSchedule& schedule,
                             const Scene& scene, Rng& rng) {
  config.validate();
  scene.validate();
  if (schedule.tx_of_chirp.size() != config.n_slow) {
    throw std::invalid_argument("TDM schedule length does not match n_slow");
  }

  FastSlowMatrix beat(config.n_fast, config.n_slow);
  const double fs = config.sample_rate();
  std::vector<Complex> fast(config.n_fast);
  std::vector<Complex> slow(config.n_slow);

  for (const PointTarget& target : scene.targets) {
    if (target.range_m >= config.max_range_m()) {
      throw std::invalid_argument("target range " + std::to_string(target.range_m) +
                                  " m beyond FMCW unambiguous range " +
                                  std::to_string(config.max_range_m()) + " m");
    }
    if (std::abs(target.velocity_mps) >= config.max_velocity_mps()) {
      throw std::invalid_argument("target velocity " + std::to_string(target.velocity_mps) +
                                  " m/s beyond FMCW unambiguous velocity");
    }
    const auto [tau, fd] = target_to_delay_doppler(target, config.carrier_hz);
    if (tau >= config.chirp_duration_s) {
      throw std::invalid_argument("target delay exceeds the chirp duration");
    }
    const Complex gain = target.amplitude * unit_phasor(-config.carrier_hz * tau);
    const double beat_hz = config.slope() * tau;
    for (std::size_t n = 0; n < config.n_fast; ++n) {
      fast[n] = gain * unit_phasor(beat_hz * static_cast<double>(n) / fs);
    }
    for (std::size_t m = 0; m < config.n_slow; ++m) {
      slow[m] = unit_phasor(fd * static_cast<double>(m) * config.chirp_duration_s);
    }
    beat.add_outer(fast, slow);
  }

  if (scene.noise_power > 0.0) {
    for (Complex& v : beat.data()) v += rng.complex_gaussian(scene.noise_power);
  }
  return beat;
}

RangeDopplerMap chirp_sequence_map(const FmcwConfig& config, const FastSlowMatrix& beat,
                                   std::span<const double> slow_weights, std::size_t tx) {
  const std::size_t nf = config.n_fast;
  const std::size_t ns = config.n_slow;
  if (beat.n_fast() != nf || beat.n_slow() != ns || slow_weights.size() != ns) {
    throw std::invalid_argument("beat matrix shape does not match the FMCW config");
  }
  const auto fast_window = dsp::window_weights(config.window, nf);
  const auto slow_window = dsp::window_weights(config.window, ns);

  // [slow][fast] -> range FFT per chirp
  std::vector<Complex> work(nf * ns);
  for (std::size_t m = 0; m < ns; ++m) {
    const double w = slow_weights[m] * slow_window[m];
    const auto chirp = beat.sweep(m);
    Complex* out = work.data() + m * nf;
    if (w == 0.0) {
      std::fill(out, out + nf, Complex{});
      continue;
    }
    for (std::size_t n = 0; n < nf; ++n) out[n] = chirp[n] * (w * fast_window[n]);
  }
  dsp::fft_forward_batch(work, nf);

  // [range][slow] -> Doppler FFT per range bin
  RangeDopplerMap map(nf, ns, config.range_bin_m(), config.doppler_bin_mps(), tx);
  dsp::transpose(work, ns, nf, map.data());
  dsp::fft_forward_batch(map.data(), ns);

  double owned_weight = 0.0;
  for (std::size_t m = 0; m < ns; ++m) owned_weight += slow_weights[m] * slow_window[m];
  if (!(owned_weight > 0.0)) throw std::invalid_argument("channel owns no chirps");
  const double scale = 1.0 / owned_weight;
  for (Complex& v : map.data()) v *= scale;
  return map;
}

RangeDopplerMap process_fmcw(const FmcwConfig& config, const TdmSchedule& schedule,
                             const FastSlowMatrix& beat, std::size_t tx) {
  config.validate();
  if (tx >= schedule.n_tx) {
    throw std::invalid_argument("process_fmcw: tx " + std::to_string(tx) + " >= n_tx " +
                                std::to_string(schedule.n_tx));
  }
  if (schedule.tx_of_chirp.size() != config.n_slow) {
    throw std::invalid_argument("TDM schedule length does not match n_slow");
  }
  std::vector<double> owned(config.n_slow, 0.0);
  for (std::size_t m = 0; m < config.n_slow; ++m) {
    if (schedule.tx_of_chirp[m] == tx) owned[m] = 1.0;
  }
  return chirp_sequence_map(config, beat, owned, tx);
}

}  // namespace mimo::fmcw
