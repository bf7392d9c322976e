#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "mimo/dsp.hpp"
#include "mimo/model.hpp"
#include "mimo/rng.hpp"

// OFDM radar with random frequency (FDM) or time-frequency (TFDM) transmitter
// allocation and the spectral-division receiver. Everything is simulated in
// the symbol domain: with the target delay inside the cyclic prefix every
// subcarrier sees a pure phase rotation.
namespace mimo::ofdm {

struct OfdmConfig {
  double carrier_hz = 78.6e9;
  double subcarrier_spacing_hz = 120e3;
  double cyclic_prefix_s = 1.0 / (4.0 * 120e3);
  std::size_t n_subcarriers = 1024;
  std::size_t n_symbols = 256;
  dsp::Window window = dsp::Window::rectangular;

  double symbol_duration_s() const { return 1.0 / subcarrier_spacing_hz + cyclic_prefix_s; }
  double bandwidth_hz() const {
    return static_cast<double>(n_subcarriers) * subcarrier_spacing_hz;
  }
  double range_bin_m() const { return kSpeedOfLight / (2.0 * bandwidth_hz()); }
  double doppler_bin_hz() const {
    return 1.0 / (static_cast<double>(n_symbols) * symbol_duration_s());
  }
  double doppler_bin_mps() const { return velocity_for_doppler(doppler_bin_hz(), carrier_hz); }
  double max_velocity_mps() const {
    return velocity_for_doppler(0.5 / symbol_duration_s(), carrier_hz);
  }

  void validate() const;
};

enum class AllocationMode { fdm, tfdm };

std::string_view to_string(AllocationMode mode);

// Complex [n_subcarriers x n_symbols] grid, row = subcarrier.
class SymbolGrid {
 public:
  SymbolGrid() = default;
  SymbolGrid(std::size_t n_subcarriers, std::size_t n_symbols)
      : n_sc_(n_subcarriers), n_sym_(n_symbols), data_(n_subcarriers * n_symbols) {}

  std::size_t n_subcarriers() const { return n_sc_; }
  std::size_t n_symbols() const { return n_sym_; }

  Complex& at(std::size_t sc, std::size_t sym) { return data_[sc * n_sym_ + sym]; }
  const Complex& at(std::size_t sc, std::size_t sym) const { return data_[sc * n_sym_ + sym]; }

  std::span<Complex> data() { return data_; }
  std::span<const Complex> data() const { return data_; }

 private:
  std::size_t n_sc_ = 0;
  std::size_t n_sym_ = 0;
  std::vector<Complex> data_;
};

class ResourceAllocation {
 public:
  ResourceAllocation(std::size_t n_subcarriers, std::size_t n_symbols, std::size_t n_tx,
                     AllocationMode mode)
      : n_sc_(n_subcarriers),
        n_sym_(n_symbols),
        n_tx_(n_tx),
        mode_(mode),
        owner_(n_subcarriers * n_symbols, 0) {}

  std::size_t n_subcarriers() const { return n_sc_; }
  std::size_t n_symbols() const { return n_sym_; }
  std::size_t n_tx() const { return n_tx_; }
  AllocationMode mode() const { return mode_; }

  std::uint16_t owner(std::size_t sc, std::size_t sym) const { return owner_[sc * n_sym_ + sym]; }
  void set_owner(std::size_t sc, std::size_t sym, std::uint16_t tx) {
    owner_[sc * n_sym_ + sym] = tx;
  }

  // Resource elements per transmitter over the whole frame.
  std::vector<std::size_t> counts() const;
  // Subcarriers per transmitter inside one symbol.
  std::vector<std::size_t> symbol_counts(std::size_t sym) const;

 private:
  std::size_t n_sc_;
  std::size_t n_sym_;
  std::size_t n_tx_;
  AllocationMode mode_;
  std::vector<std::uint16_t> owner_;
};

inline constexpr std::size_t kMaxTransmitters = 65535;

// FDM: one random balanced partition of the subcarriers, held for every
// symbol. TFDM: an independent random balanced partition of the subcarriers
// in every symbol. In both, the first N_c mod N_tx transmitters get one extra
// subcarrier per symbol.
ResourceAllocation make_allocation(Rng& rng, std::size_t n_subcarriers, std::size_t n_symbols,
                                   std::size_t n_tx, AllocationMode mode);

// Unit-modulus QPSK on the elements each transmitter owns, zero elsewhere.
std::vector<SymbolGrid> make_payload(Rng& rng, const ResourceAllocation& alloc);

// Y[n,m] = sum_tx sum_targets alpha X_tx[n,m] exp(-j2pi n df tau) exp(j2pi fD m Tsym)
//          * exp(-j2pi fc tau)  (+ noise)
SymbolGrid simulate_ofdm_rx(const OfdmConfig& config, const ResourceAllocation& alloc,
                            std::span<const SymbolGrid> payload, const Scene& scene, Rng& rng);

// Y_div = Y_rx / X_tx on the elements tx owns, zero elsewhere.
SymbolGrid spectral_division(const ResourceAllocation& alloc, const SymbolGrid& payload_tx,
                             const SymbolGrid& rx, std::size_t tx);

// Spectral division, IDFT over subcarriers, DFT over symbols, divided by the
// (window-weighted) number of owned elements.
RangeDopplerMap process_ofdm(const OfdmConfig& config, const ResourceAllocation& alloc,
                             std::span<const SymbolGrid> payload, const SymbolGrid& rx,
                             std::size_t tx);

}  // namespace mimo::ofdm
