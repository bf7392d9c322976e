#include "mimo/ofdm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mimo::ofdm {

namespace {

void check_shape(const ResourceAllocation& alloc, const SymbolGrid& grid, const char* what) {
  if (grid.n_subcarriers() != alloc.n_subcarriers() || grid.n_symbols() != alloc.n_symbols()) {
    throw std::invalid_argument(std::string(what) + " grid shape does not match the allocation");
  }
}

void check_config_shape(const OfdmConfig& config, const ResourceAllocation& alloc) {
  if (alloc.n_subcarriers() != config.n_subcarriers || alloc.n_symbols() != config.n_symbols) {
    throw std::invalid_argument("allocation shape does not match the OFDM config");
  }
}

// One balanced random partition of n subcarriers into n_tx owners.
std::vector<std::uint16_t> random_partition(Rng& rng, std::size_t n, std::size_t n_tx) {
  std::vector<std::uint16_t> owners(n);
  for (std::size_t i = 0; i < n; ++i) owners[i] = static_cast<std::uint16_t>(i % n_tx);
  shuffle(rng, std::span<std::uint16_t>(owners));
  return owners;
}

}  // namespace

void OfdmConfig::validate() const {
  if (!(carrier_hz > 0.0) || !(subcarrier_spacing_hz > 0.0) || !(cyclic_prefix_s >= 0.0)) {
    throw std::invalid_argument("OFDM carrier and subcarrier spacing must be > 0, CP >= 0");
  }
  if (n_subcarriers < 2 || n_symbols < 2) {
    throw std::invalid_argument("OFDM frame needs at least 2 subcarriers and 2 symbols");
  }
}

std::string_view to_string(AllocationMode mode) {
  return mode == AllocationMode::fdm ? "fdm" : "tfdm";
}

std::vector<std::size_t> ResourceAllocation::counts() const {
  std::vector<std::size_t> c(n_tx_, 0);
  for (std::uint16_t o : owner_) ++c.at(o);
  return c;
}

std::vector<std::size_t> ResourceAllocation::symbol_counts(std::size_t sym) const {
  std::vector<std::size_t> c(n_tx_, 0);
  for (std::size_t sc = 0; sc < n_sc_; ++sc) ++c.at(owner(sc, sym));
  return c;
}

ResourceAllocation make_allocation(Rng& rng, std::size_t n_subcarriers, std::size_t n_symbols,
                                   std::size_t n_tx, AllocationMode mode) {
  if (n_tx == 0) throw std::invalid_argument("allocation needs at least one transmitter");
  if (n_tx > n_subcarriers || n_tx > kMaxTransmitters) {
    throw std::invalid_argument("allocation: n_tx (" + std::to_string(n_tx) +
                                ") exceeds the number of subcarriers (" +
                                std::to_string(n_subcarriers) + ")");
  }
  ResourceAllocation alloc(n_subcarriers, n_symbols, n_tx, mode);
  if (mode == AllocationMode::fdm) {
    const auto owners = random_partition(rng, n_subcarriers, n_tx);
    for (std::size_t sc = 0; sc < n_subcarriers; ++sc) {
      for (std::size_t sym = 0; sym < n_symbols; ++sym) alloc.set_owner(sc, sym, owners[sc]);
    }
  } else {
    for (std::size_t sym = 0; sym < n_symbols; ++sym) {
      const auto owners = random_partition(rng, n_subcarriers, n_tx);
      for (std::size_t sc = 0; sc < n_subcarriers; ++sc) alloc.set_owner(sc, sym, owners[sc]);
    }
  }
  return alloc;
}

std::vector<SymbolGrid> make_payload(Rng& rng, const ResourceAllocation& alloc) {
  std::vector<SymbolGrid> payload;
  payload.reserve(alloc.n_tx());
  for (std::size_t tx = 0; tx < alloc.n_tx(); ++tx) {
    payload.emplace_back(alloc.n_subcarriers(), alloc.n_symbols());
  }
  for (std::size_t sc = 0; sc < alloc.n_subcarriers(); ++sc) {
    for (std::size_t sym = 0; sym < alloc.n_symbols(); ++sym) {
      // QPSK at pi/4 + q pi/2
      const auto q = static_cast<double>(rng.next() >> 62);
      payload[alloc.owner(sc, sym)].at(sc, sym) = unit_phasor(0.125 + 0.25 * q);
    }
  }
  return payload;
}

SymbolGrid simulate_ofdm_rx(const OfdmConfig& config, const ResourceAllocation& alloc,
                            std::span<const SymbolGrid> payload, const Scene& scene, Rng& rng) {
  config.validate();
  scene.validate();
  check_config_shape(config, alloc);
  if (payload.size() != alloc.n_tx()) {
    throw std::invalid_argument("payload count does not match the number of transmitters");
  }
  for (const SymbolGrid& x : payload) check_shape(alloc, x, "payload");

  const std::size_t n_sc = config.n_subcarriers;
  const std::size_t n_sym = config.n_symbols;

  // Owned elements are disjoint, so the transmitted frame is the sum of grids.
  SymbolGrid tx_frame(n_sc, n_sym);
  for (const SymbolGrid& x : payload) {
    auto dst = tx_frame.data();
    auto src = x.data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
  }

  SymbolGrid rx(n_sc, n_sym);
  std::vector<Complex> freq(n_sc);
  std::vector<Complex> slow(n_sym);
  for (const PointTarget& target : scene.targets) {
    const auto [tau, fd] = target_to_delay_doppler(target, config.carrier_hz);
    if (tau > config.cyclic_prefix_s) {
      throw std::invalid_argument("target delay " + std::to_string(tau) +
                                  " s exceeds the cyclic prefix " +
                                  std::to_string(config.cyclic_prefix_s) + " s");
    }
    if (std::abs(target.velocity_mps) >= config.max_velocity_mps()) {
      throw std::invalid_argument("target velocity beyond OFDM unambiguous velocity");
    }
    const Complex gain = target.amplitude * unit_phasor(-config.carrier_hz * tau);
    for (std::size_t n = 0; n < n_sc; ++n) {
      freq[n] = gain * unit_phasor(-static_cast<double>(n) * config.subcarrier_spacing_hz * tau);
    }
    for (std::size_t m = 0; m < n_sym; ++m) {
      slow[m] = unit_phasor(fd * static_cast<double>(m) * config.symbol_duration_s());
    }
    for (std::size_t n = 0; n < n_sc; ++n) {
      for (std::size_t m = 0; m < n_sym; ++m) {
        rx.at(n, m) += tx_frame.at(n, m) * freq[n] * slow[m];
      }
    }
  }

  if (scene.noise_power > 0.0) {
    for (Complex& v : rx.data()) v += rng.complex_gaussian(scene.noise_power);
  }
  return rx;
}

SymbolGrid spectral_division(const ResourceAllocation& alloc, const SymbolGrid& payload_tx,
                             const SymbolGrid& rx, std::size_t tx) {
  if (tx >= alloc.n_tx()) {
    throw std::invalid_argument("spectral_division: tx " + std::to_string(tx) + " >= n_tx " +
                                std::to_string(alloc.n_tx()));
  }
  check_shape(alloc, payload_tx, "payload");
  check_shape(alloc, rx, "received");
  SymbolGrid div(alloc.n_subcarriers(), alloc.n_symbols());
  for (std::size_t n = 0; n < alloc.n_subcarriers(); ++n) {
    for (std::size_t m = 0; m < alloc.n_symbols(); ++m) {
      if (alloc.owner(n, m) == tx) div.at(n, m) = rx.at(n, m) / payload_tx.at(n, m);
    }
  }
  return div;
}

RangeDopplerMap process_ofdm(const OfdmConfig& config, const ResourceAllocation& alloc,
                             std::span<const SymbolGrid> payload, const SymbolGrid& rx,
                             std::size_t tx) {
  config.validate();
  check_config_shape(config, alloc);
  if (tx >= payload.size()) {
    throw std::invalid_argument("process_ofdm: tx " + std::to_string(tx) + " >= n_tx " +
                                std::to_string(payload.size()));
  }
  SymbolGrid div = spectral_division(alloc, payload[tx], rx, tx);

  const std::size_t n_sc = config.n_subcarriers;
  const std::size_t n_sym = config.n_symbols;
  const auto w_sc = dsp::window_weights(config.window, n_sc);
  const auto w_sym = dsp::window_weights(config.window, n_sym);
  double owned_weight = 0.0;
  for (std::size_t n = 0; n < n_sc; ++n) {
    for (std::size_t m = 0; m < n_sym; ++m) {
      const double w = w_sc[n] * w_sym[m];
      div.at(n, m) *= w;
      if (alloc.owner(n, m) == tx) owned_weight += w;
    }
  }
  if (!(owned_weight > 0.0)) throw std::invalid_argument("channel owns no resource elements");

  // Rows are subcarriers: Doppler DFT along each row, then transpose so that
  // the range IDFT runs contiguously over subcarriers.
  auto grid = div.data();
  dsp::fft_forward_batch(grid, n_sym);
  std::vector<Complex> by_symbol(n_sc * n_sym);
  dsp::transpose(grid, n_sc, n_sym, by_symbol);
  dsp::fft_inverse_batch(by_symbol, n_sc);

  RangeDopplerMap map(n_sc, n_sym, config.range_bin_m(), config.doppler_bin_mps(), tx);
  dsp::transpose(by_symbol, n_sym, n_sc, map.data());
  const double scale = 1.0 / owned_weight;
  for (Complex& v : map.data()) v *= scale;
  return map;
}

}  // namespace mimo::ofdm
