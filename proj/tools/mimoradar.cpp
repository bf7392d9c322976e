#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "mimo/harness.hpp"
#include "mimo/plot.hpp"
#include "mimo/sequences.hpp"

namespace {

using namespace mimo;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

harness::ExperimentSpec base_spec(const std::string& config_path) {
  return config_path.empty() ? harness::default_spec() : harness::load_spec(config_path);
}

harness::Waveform waveform_arg(const std::string& id) {
  try {
    return harness::parse_waveform(id);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int run_sweep(const std::string& config, const std::string& out, const std::string& svg,
              std::optional<std::uint64_t> seed) {
  harness::ExperimentSpec spec = harness::load_spec(config);
  if (seed) spec.seed = *seed;
  if (!out.empty()) spec.csv_path = out;
  if (!svg.empty()) spec.svg_path = svg;

  const auto reports = harness::run_sweep(spec);
  const std::string csv = harness::to_csv(reports);
  if (spec.csv_path) {
    harness::write_text(*spec.csv_path, csv);
  } else {
    std::cout << csv;
  }
  if (spec.svg_path) {
    harness::write_text(*spec.svg_path, plot::islr_curves_svg(harness::summarize(reports)));
  }
  return 0;
}

int run_map(const std::string& waveform, std::size_t n_tx, const std::string& out,
            const std::string& config, std::optional<std::uint64_t> seed, std::size_t index) {
  const harness::Waveform w = waveform_arg(waveform);
  harness::ExperimentSpec spec = base_spec(config);
  if (seed) spec.seed = *seed;
  const auto report = harness::dump_map(spec, w, n_tx, out, index);
  std::cout << harness::kCsvHeader << '\n' << harness::csv_row(report) << '\n';
  return 0;
}

int run_trial(const std::string& waveform, std::size_t n_tx, std::uint64_t seed,
              const std::string& config, std::size_t index) {
  const harness::Waveform w = waveform_arg(waveform);
  harness::ExperimentSpec spec = base_spec(config);
  spec.seed = seed;
  std::cout << harness::csv_row(harness::run_trial(spec, w, n_tx, index)) << '\n';
  return 0;
}

std::string chip_string(const PhaseCode& code) {
  std::string s;
  s.reserve(code.size());
  for (auto c : code.chips) s.push_back(c > 0 ? '+' : '-');
  return s;
}

int run_codes(int degree, bool stats) {
  if (degree < kMinDegree || degree > kMaxDegree) {
    throw UsageError("--degree must be in [" + std::to_string(kMinDegree) + ", " +
                     std::to_string(kMaxDegree) + "]");
  }
  const auto polys = primitive_polynomials(degree);
  const auto family = enumerate_family(degree);
  std::vector<CodeStats> st;
  if (stats) st = family_statistics(degree);

  std::cout << "index,polynomial,mask,length";
  if (stats) {
    std::cout << ",plus_ones,minus_ones,autocorr_peak,autocorr_max_sidelobe,two_valued,max_cross";
  }
  std::cout << ",chips\n";
  for (std::size_t i = 0; i < family.size(); ++i) {
    std::cout << i << ',' << polys[i].to_string() << ',' << polys[i].mask() << ','
              << family[i].size();
    if (stats) {
      const CodeStats& s = st[i];
      std::cout << ',' << s.plus_ones << ',' << s.minus_ones << ',' << s.autocorr_peak << ','
                << s.autocorr_max_sidelobe << ',' << (s.two_valued ? 1 : 0) << ','
                << s.max_cross;
    }
    std::cout << ',' << chip_string(family[i]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MIMO radar multiplexing sidelobe simulator", "mimoradar"};
  app.require_subcommand(1);

  std::string config, out, svg, waveform;
  std::uint64_t seed_value = 0;
  std::size_t n_tx = 0, index = 0;
  int degree = 0;
  bool stats = false;

  auto* sweep = app.add_subcommand("sweep", "Run an N_tx sweep and write per-trial CSV");
  sweep->add_option("--config", config, "JSON experiment config")->required()->check(
      CLI::ExistingFile);
  sweep->add_option("--out", out, "CSV output path (default: stdout)");
  sweep->add_option("--svg", svg, "SVG plot of mean ISLR curves");
  auto* sweep_seed = sweep->add_option("--seed", seed_value, "Override the base seed");

  auto* map = app.add_subcommand("map", "Dump the Tx-0 range-Doppler magnitude map");
  map->add_option("--waveform", waveform, "fmcw-tdm|pmcw|pcfmcw|ofdm-fdm|ofdm-tfdm")->required();
  map->add_option("--ntx", n_tx, "Number of transmitters")->required()->check(
      CLI::PositiveNumber);
  map->add_option("--out", out, "Binary dump path")->required();
  map->add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
  auto* map_seed = map->add_option("--seed", seed_value, "Base seed");
  map->add_option("--trial", index, "Trial index");

  auto* codes = app.add_subcommand("codes", "List the m-sequence family of a degree");
  codes->add_option("--degree", degree, "LFSR degree n (length 2^n - 1)")->required();
  codes->add_flag("--stats", stats, "Add correlation statistics columns");

  auto* trial = app.add_subcommand("trial", "Run one trial and print its CSV row");
  trial->add_option("--waveform", waveform, "fmcw-tdm|pmcw|pcfmcw|ofdm-fdm|ofdm-tfdm")
      ->required();
  trial->add_option("--ntx", n_tx, "Number of transmitters")->required()->check(
      CLI::PositiveNumber);
  trial->add_option("--seed", seed_value, "Base seed")->required();
  trial->add_option("--config", config, "JSON experiment config")->check(CLI::ExistingFile);
  trial->add_option("--index", index, "Trial index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (*sweep) {
      return run_sweep(config, out, svg,
                       *sweep_seed ? std::optional(seed_value) : std::nullopt);
    }
    if (*map) {
      return run_map(waveform, n_tx, out, config,
                     *map_seed ? std::optional(seed_value) : std::nullopt, index);
    }
    if (*codes) return run_codes(degree, stats);
    if (*trial) return run_trial(waveform, n_tx, seed_value, config, index);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
