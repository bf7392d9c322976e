#include "mimo/pmcw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace mimo::pmcw {

namespace {

void check_codes(const PmcwConfig& config, std::span<const PhaseCode> codes) {
  if (codes.empty()) throw std::invalid_argument("PMCW needs at least one code");
  for (const PhaseCode& c : codes) {
    if (c.size() != config.code_length) {
      throw std::invalid_argument("PMCW code length " + std::to_string(c.size()) +
                                  " does not match config code_length " +
                                  std::to_string(config.code_length));
    }
  }
}

}  // namespace

void PmcwConfig::validate() const {
  if (!(carrier_hz > 0.0) || !(chip_rate_hz > 0.0)) {
    throw std::invalid_argument("PMCW carrier and chip rate must be > 0");
  }
  if (code_length < 2 || n_rep < 1) {
    throw std::invalid_argument("PMCW needs code_length >= 2 and n_rep >= 1");
  }
}

std::size_t delay_in_chips(const PmcwConfig& config, double delay_s) {
  return static_cast<std::size_t>(std::llround(delay_s * config.sample_rate()));
}

FastSlowMatrix simulate_pmcw_rx(const PmcwConfig& config, std::span<const PhaseCode> codes,
                                const Scene& scene, Rng& rng) {
  config.validate();
  scene.validate();
  check_codes(config, codes);

  const std::size_t m_len = config.code_length;
  FastSlowMatrix rx(m_len, config.n_rep);

  // Transmitters share the channel, so their codes sum before the delay.
  std::vector<double> code_sum(m_len, 0.0);
  for (const PhaseCode& c : codes) {
    for (std::size_t i = 0; i < m_len; ++i) code_sum[i] += c[i];
  }

  std::vector<Complex> fast(m_len);
  std::vector<Complex> slow(config.n_rep);
  for (const PointTarget& target : scene.targets) {
    if (std::abs(target.velocity_mps) >= config.max_velocity_mps()) {
      throw std::invalid_argument("target velocity beyond PMCW unambiguous velocity");
    }
    const auto [tau, fd] = target_to_delay_doppler(target, config.carrier_hz);
    const std::size_t d = delay_in_chips(config, tau);
    if (d >= m_len) {
      throw std::invalid_argument("target delay of " + std::to_string(d) +
                                  " chips is not shorter than the code (" +
                                  std::to_string(m_len) + " chips)");
    }
    const Complex gain = target.amplitude * unit_phasor(-config.carrier_hz * tau);
    for (std::size_t n = 0; n < m_len; ++n) {
      fast[n] = gain * code_sum[(n + m_len - d) % m_len];
    }
    for (std::size_t r = 0; r < config.n_rep; ++r) {
      slow[r] = unit_phasor(fd * static_cast<double>(r) * config.repetition_period_s());
    }
    rx.add_outer(fast, slow);
  }

  if (scene.noise_power > 0.0) {
    for (Complex& v : rx.data()) v += rng.complex_gaussian(scene.noise_power);
  }
  return rx;
}

RangeDopplerMap process_pmcw(const PmcwConfig& config, std::span<const PhaseCode> codes,
                             const FastSlowMatrix& rx, std::size_t tx) {
  config.validate();
  check_codes(config, codes);
  if (tx >= codes.size()) {
    throw std::invalid_argument("process_pmcw: tx " + std::to_string(tx) + " >= n_tx " +
                                std::to_string(codes.size()));
  }
  const std::size_t m_len = config.code_length;
  const std::size_t n_rep = config.n_rep;
  if (rx.n_fast() != m_len || rx.n_slow() != n_rep) {
    throw std::invalid_argument("PMCW rx matrix shape does not match the config");
  }

  std::vector<Complex> ref(m_len);
  for (std::size_t i = 0; i < m_len; ++i) ref[i] = static_cast<double>(codes[tx][i]);
  dsp::fft_forward(ref);

  const auto slow_window = dsp::window_weights(config.window, n_rep);
  double window_sum = 0.0;
  for (double w : slow_window) window_sum += w;

  // corr[k] = sum_n rx[n] code[n - k]  ->  IDFT(RX * conj(CODE)) / M
  std::vector<Complex> work(rx.data().begin(), rx.data().end());
  dsp::fft_forward_batch(work, m_len);
  const double scale = 1.0 / (static_cast<double>(m_len) * static_cast<double>(m_len));
  for (std::size_t r = 0; r < n_rep; ++r) {
    Complex* col = work.data() + r * m_len;
    const double w = slow_window[r] * scale;
    for (std::size_t k = 0; k < m_len; ++k) col[k] *= std::conj(ref[k]) * w;
  }
  dsp::fft_inverse_batch(work, m_len);

  RangeDopplerMap map(m_len, n_rep, config.range_bin_m(), config.doppler_bin_mps(), tx);
  dsp::transpose(work, n_rep, m_len, map.data());
  dsp::fft_forward_batch(map.data(), n_rep);
  if (config.window != dsp::Window::rectangular) {
    // Keep the matched peak at n_rep regardless of window.
    const double gain = static_cast<double>(n_rep) / window_sum;
    for (Complex& v : map.data()) v *= gain;
  }
  return map;
}

}  // namespace mimo::pmcw
