#include "mimo/pcfmcw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mimo/dsp.hpp"

namespace mimo::pcfmcw {

namespace {

constexpr double kWholeSampleTolerance = 1e-9;

void check_codes(const PcFmcwConfig& config, std::span<const PhaseCode> codes) {
  if (codes.empty()) throw std::invalid_argument("PC-FMCW needs at least one code");
  for (const PhaseCode& c : codes) {
    if (c.size() != config.code_length()) {
      throw std::invalid_argument("PC-FMCW code length " + std::to_string(c.size()) +
                                  " does not match n_fast " +
                                  std::to_string(config.code_length()));
    }
  }
}

// Circularly delay `x` by `delay` samples.
std::vector<Complex> circular_delay(std::span<const Complex> x, double delay) {
  const std::size_t n = x.size();
  std::vector<Complex> out(n);
  const double whole = std::round(delay);
  if (std::abs(delay - whole) < kWholeSampleTolerance) {
    const std::size_t d = static_cast<std::size_t>(whole) % n;
    for (std::size_t i = 0; i < n; ++i) out[i] = x[(i + n - d) % n];
    return out;
  }
  out.assign(x.begin(), x.end());
  dsp::fft_forward(out);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double bin = static_cast<double>(dsp::signed_bin(k, n));
    out[k] *= unit_phasor(-bin * delay * inv_n) * inv_n;
  }
  dsp::fft_inverse(out);
  return out;
}

}  // namespace

void PcFmcwConfig::validate() const {
  chirp.validate();
  if (msequence_degree_for_length(chirp.n_fast) < 0) {
    throw std::invalid_argument("PC-FMCW n_fast must be an m-sequence length 2^n - 1, got " +
                                std::to_string(chirp.n_fast));
  }
}

Complex gdf_response(const PcFmcwConfig& config, double frequency_hz) {
  // exp(j pi f^2 / k) = exp(j 2 pi * f^2 / (2k))
  return unit_phasor(frequency_hz * frequency_hz / (2.0 * config.chirp.slope()));
}

FastSlowMatrix simulate_pcfmcw_beat(const PcFmcwConfig& config, std::span<const PhaseCode> codes,
                                    const Scene& scene, Rng& rng) {
  config.validate();
  scene.validate();
  check_codes(config, codes);

  const fmcw::FmcwConfig& chirp = config.chirp;
  const std::size_t nf = chirp.n_fast;
  const double fs = chirp.sample_rate();
  FastSlowMatrix beat(nf, chirp.n_slow);

  std::vector<Complex> code_sum(nf);
  for (const PhaseCode& c : codes) {
    for (std::size_t i = 0; i < nf; ++i) code_sum[i] += static_cast<double>(c[i]);
  }

  std::vector<Complex> fast(nf);
  std::vector<Complex> slow(chirp.n_slow);
  for (const PointTarget& target : scene.targets) {
    if (target.range_m >= config.max_range_m()) {
      throw std::invalid_argument("target range " + std::to_string(target.range_m) +
                                  " m beyond PC-FMCW unambiguous range " +
                                  std::to_string(config.max_range_m()) + " m");
    }
    if (std::abs(target.velocity_mps) >= chirp.max_velocity_mps()) {
      throw std::invalid_argument("target velocity beyond PC-FMCW unambiguous velocity");
    }
    const auto [tau, fd] = target_to_delay_doppler(target, chirp.carrier_hz);
    if (tau >= chirp.chirp_duration_s) {
      throw std::invalid_argument("target delay is not shorter than the chirp");
    }
    const auto delayed = circular_delay(code_sum, tau * fs);
    const Complex gain = target.amplitude * unit_phasor(-chirp.carrier_hz * tau);
    const double beat_hz = chirp.slope() * tau;
    for (std::size_t n = 0; n < nf; ++n) {
      fast[n] = gain * delayed[n] * unit_phasor(beat_hz * static_cast<double>(n) / fs);
    }
    for (std::size_t m = 0; m < chirp.n_slow; ++m) {
      slow[m] = unit_phasor(fd * static_cast<double>(m) * chirp.chirp_duration_s);
    }
    beat.add_outer(fast, slow);
  }

  if (scene.noise_power > 0.0) {
    for (Complex& v : beat.data()) v += rng.complex_gaussian(scene.noise_power);
  }
  return beat;
}

FastSlowMatrix group_delay_filter(const PcFmcwConfig& config, const FastSlowMatrix& y) {
  config.chirp.validate();
  const std::size_t nf = config.chirp.n_fast;
  if (y.n_fast() != nf || y.n_slow() != config.chirp.n_slow) {
    throw std::invalid_argument("group_delay_filter: matrix shape does not match the config");
  }
  const double fs = config.chirp.sample_rate();
  const double inv_n = 1.0 / static_cast<double>(nf);
  std::vector<Complex> response(nf);
  for (std::size_t k = 0; k < nf; ++k) {
    const double f = static_cast<double>(dsp::signed_bin(k, nf)) * fs * inv_n;
    response[k] = gdf_response(config, f) * inv_n;
  }

  FastSlowMatrix out = y;
  auto data = out.data();
  dsp::fft_forward_batch(data, nf);
  for (std::size_t m = 0; m < out.n_slow(); ++m) {
    auto chirp = out.sweep(m);
    for (std::size_t k = 0; k < nf; ++k) chirp[k] *= response[k];
  }
  dsp::fft_inverse_batch(data, nf);
  return out;
}

FastSlowMatrix decode(const FastSlowMatrix& y, const PhaseCode& code) {
  if (code.size() != y.n_fast()) {
    throw std::invalid_argument("decode: code length does not match fast-time length");
  }
  FastSlowMatrix out = y;
  for (std::size_t m = 0; m < out.n_slow(); ++m) {
    auto chirp = out.sweep(m);
    for (std::size_t n = 0; n < chirp.size(); ++n) chirp[n] *= static_cast<double>(code[n]);
  }
  return out;
}

RangeDopplerMap decode_and_process(const PcFmcwConfig& config, const FastSlowMatrix& filtered,
                                   const PhaseCode& code, std::size_t tx) {
  config.validate();
  if (code.size() != config.code_length()) {
    throw std::invalid_argument("decode_and_process: code length does not match n_fast");
  }
  const FastSlowMatrix decoded = decode(filtered, code);
  const std::vector<double> all(config.chirp.n_slow, 1.0);
  return fmcw::chirp_sequence_map(config.chirp, decoded, all, tx);
}

}  // namespace mimo::pcfmcw
