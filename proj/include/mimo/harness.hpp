#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mimo/fmcw.hpp"
#include "mimo/metrics.hpp"
#include "mimo/model.hpp"
#include "mimo/ofdm.hpp"
#include "mimo/pcfmcw.hpp"
#include "mimo/pmcw.hpp"

namespace mimo::harness {

enum class Waveform { fmcw_tdm, pmcw, pcfmcw, ofdm_fdm, ofdm_tfdm };

inline constexpr Waveform kAllWaveforms[] = {Waveform::fmcw_tdm, Waveform::pmcw,
                                             Waveform::pcfmcw, Waveform::ofdm_fdm,
                                             Waveform::ofdm_tfdm};

// "fmcw-tdm", "pmcw", "pcfmcw", "ofdm-fdm", "ofdm-tfdm"
std::string_view to_string(Waveform w);
Waveform parse_waveform(std::string_view id);

// Target placed on each waveform's own processing grid. Bins may be
// fractional (off-grid) or negative in Doppler (receding).
struct TargetBins {
  double range_bin = 100.0;
  double doppler_bin = 37.0;
  Complex amplitude{1.0, 0.0};
};

struct ExperimentSpec {
  std::vector<Waveform> waveforms{std::begin(kAllWaveforms), std::end(kAllWaveforms)};
  std::vector<std::size_t> n_tx{1, 2, 4, 8, 12, 16, 24, 32, 48, 60};
  std::size_t trials = 10;
  std::uint64_t seed = 1;
  std::size_t guard = metrics::kDefaultGuard;
  dsp::Window window = dsp::Window::rectangular;
  std::size_t threads = 0;  // 0: hardware concurrency

  std::vector<TargetBins> targets{TargetBins{}};
  double noise_power = 0.0;

  fmcw::FmcwConfig fmcw;
  pcfmcw::PcFmcwConfig pcfmcw;
  pmcw::PmcwConfig pmcw;
  ofdm::OfdmConfig ofdm;

  std::optional<std::filesystem::path> csv_path;
  std::optional<std::filesystem::path> svg_path;

  // Throws std::invalid_argument on inconsistent settings, including any n_tx
  // above a waveform's maximum.
  void validate() const;
};

ExperimentSpec default_spec();

// JSON text with the keys documented in the README; unknown keys are errors.
ExperimentSpec spec_from_json(std::string_view json_text);
ExperimentSpec load_spec(const std::filesystem::path& path);

// 60 for the code-based chains with 1023-chip codes, n_slow for TDM,
// n_subcarriers for OFDM.
std::size_t max_transmitters(const ExperimentSpec& spec, Waveform w);

// The experiment's targets converted to physical units for waveform `w`.
Scene scene_for(const ExperimentSpec& spec, Waveform w);

// Simulates one frame with n_tx transmitters and returns the Tx-0 map.
RangeDopplerMap simulate_tx0_map(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                                 std::uint64_t trial_seed);

std::uint64_t trial_seed(const ExperimentSpec& spec, std::size_t trial_index);

metrics::IslrReport run_trial(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                              std::size_t trial_index);

// One report per (waveform, n_tx, trial) in that nesting order.
std::vector<metrics::IslrReport> run_sweep(const ExperimentSpec& spec);

inline constexpr std::string_view kCsvHeader =
    "waveform,n_tx,trial,seed,islr_range_db,islr_doppler_db,islr_2d_db,peak_range_bin,"
    "peak_doppler_bin,peak_mag";

std::string csv_row(const metrics::IslrReport& r);
std::string to_csv(const std::vector<metrics::IslrReport>& reports);
void write_text(const std::filesystem::path& path, std::string_view text);

// Mean/stddev per (waveform, n_tx) in first-seen order.
struct CurvePoint {
  std::string waveform;
  std::size_t n_tx = 0;
  std::size_t count = 0;
  double mean_range_db = 0.0;
  double mean_doppler_db = 0.0;
  double mean_2d_db = 0.0;
  double std_range_db = 0.0;
  double std_doppler_db = 0.0;
  double std_2d_db = 0.0;
};
std::vector<CurvePoint> summarize(const std::vector<metrics::IslrReport>& reports);

// Writes the Tx-0 magnitude map of trial `trial_index` and returns its report.
metrics::IslrReport dump_map(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                             const std::filesystem::path& path, std::size_t trial_index = 0);

}  // namespace mimo::harness
