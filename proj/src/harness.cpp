#include "mimo/harness.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "mimo/map_io.hpp"
#include "mimo/rng.hpp"
#include "mimo/sequences.hpp"

namespace mimo::harness {

using nlohmann::json;

namespace {

// Family members are immutable once built; shared across trials and threads.
const std::vector<PhaseCode>& family_for_length(std::size_t length) {
  static std::mutex mutex;
  static std::map<std::size_t, std::vector<PhaseCode>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(length); it != cache.end()) return it->second;
  const int degree = msequence_degree_for_length(length);
  if (degree < 0) {
    throw std::invalid_argument("code length " + std::to_string(length) +
                                " is not an m-sequence length 2^n - 1");
  }
  return cache.emplace(length, enumerate_family(degree)).first->second;
}

std::span<const PhaseCode> first_codes(std::size_t length, std::size_t n_tx) {
  const auto& family = family_for_length(length);
  if (n_tx > family.size()) {
    throw std::invalid_argument("requested " + std::to_string(n_tx) + " codes but only " +
                                std::to_string(family.size()) + " m-sequences of length " +
                                std::to_string(length) + " exist");
  }
  return std::span<const PhaseCode>(family).first(n_tx);
}

// ---- JSON helpers ---------------------------------------------------------

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    std::string_view where) {
  if (!obj.is_object()) throw std::invalid_argument(std::string(where) + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (auto it = obj.find(key); it != obj.end()) out = it->get<T>();
}

Complex read_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  throw std::invalid_argument("amplitude must be a number or [re, im]");
}

void read_chirp(const json& j, fmcw::FmcwConfig& c, std::string_view where) {
  reject_unknown(j, {"carrier_hz", "bandwidth_hz", "chirp_duration_s", "n_fast", "n_slow"},
                 where);
  read(j, "carrier_hz", c.carrier_hz);
  read(j, "bandwidth_hz", c.bandwidth_hz);
  read(j, "chirp_duration_s", c.chirp_duration_s);
  read(j, "n_fast", c.n_fast);
  read(j, "n_slow", c.n_slow);
}

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::string_view to_string(Waveform w) {
  switch (w) {
    case Waveform::fmcw_tdm:
      return "fmcw-tdm";
    case Waveform::pmcw:
      return "pmcw";
    case Waveform::pcfmcw:
      return "pcfmcw";
    case Waveform::ofdm_fdm:
      return "ofdm-fdm";
    case Waveform::ofdm_tfdm:
      return "ofdm-tfdm";
  }
  return "unknown";
}

Waveform parse_waveform(std::string_view id) {
  for (Waveform w : kAllWaveforms) {
    if (to_string(w) == id) return w;
  }
  throw std::invalid_argument("unknown waveform '" + std::string(id) +
                              "' (fmcw-tdm|pmcw|pcfmcw|ofdm-fdm|ofdm-tfdm)");
}

void ExperimentSpec::validate() const {
  if (waveforms.empty()) throw std::invalid_argument("spec lists no waveforms");
  if (n_tx.empty()) throw std::invalid_argument("spec lists no n_tx values");
  if (trials == 0) throw std::invalid_argument("spec needs at least one trial");
  if (!(noise_power >= 0.0)) throw std::invalid_argument("noise_power must be >= 0");
  fmcw.validate();
  pcfmcw.validate();
  pmcw.validate();
  ofdm.validate();
  for (Waveform w : waveforms) {
    const std::size_t limit = max_transmitters(*this, w);
    for (std::size_t n : n_tx) {
      if (n == 0 || n > limit) {
        throw std::invalid_argument("n_tx " + std::to_string(n) + " outside [1, " +
                                    std::to_string(limit) + "] for " +
                                    std::string(to_string(w)));
      }
    }
  }
}

ExperimentSpec default_spec() { return ExperimentSpec{}; }

ExperimentSpec spec_from_json(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  reject_unknown(root,
                 {"waveforms", "n_tx", "trials", "seed", "guard", "window", "threads", "scene",
                  "fmcw", "pcfmcw", "pmcw", "ofdm", "output"},
                 "config");
  ExperimentSpec spec = default_spec();
  try {
    if (auto it = root.find("waveforms"); it != root.end()) {
      spec.waveforms.clear();
      for (const auto& id : *it) spec.waveforms.push_back(parse_waveform(id.get<std::string>()));
    }
    read(root, "n_tx", spec.n_tx);
    read(root, "trials", spec.trials);
    read(root, "seed", spec.seed);
    read(root, "guard", spec.guard);
    read(root, "threads", spec.threads);
    if (auto it = root.find("window"); it != root.end()) {
      spec.window = dsp::parse_window(it->get<std::string>());
    }
    if (auto it = root.find("scene"); it != root.end()) {
      reject_unknown(*it, {"targets", "noise_power"}, "scene");
      read(*it, "noise_power", spec.noise_power);
      if (auto t = it->find("targets"); t != it->end()) {
        spec.targets.clear();
        for (const auto& tj : *t) {
          reject_unknown(tj, {"range_bin", "doppler_bin", "amplitude"}, "scene.targets[]");
          TargetBins tb;
          read(tj, "range_bin", tb.range_bin);
          read(tj, "doppler_bin", tb.doppler_bin);
          if (auto a = tj.find("amplitude"); a != tj.end()) tb.amplitude = read_complex(*a);
          spec.targets.push_back(tb);
        }
      }
    }
    if (auto it = root.find("fmcw"); it != root.end()) read_chirp(*it, spec.fmcw, "fmcw");
    if (auto it = root.find("pcfmcw"); it != root.end()) {
      read_chirp(*it, spec.pcfmcw.chirp, "pcfmcw");
    }
    if (auto it = root.find("pmcw"); it != root.end()) {
      reject_unknown(*it, {"carrier_hz", "chip_rate_hz", "code_length", "n_rep"}, "pmcw");
      read(*it, "carrier_hz", spec.pmcw.carrier_hz);
      read(*it, "chip_rate_hz", spec.pmcw.chip_rate_hz);
      read(*it, "code_length", spec.pmcw.code_length);
      read(*it, "n_rep", spec.pmcw.n_rep);
    }
    if (auto it = root.find("ofdm"); it != root.end()) {
      reject_unknown(*it,
                     {"carrier_hz", "subcarrier_spacing_hz", "cyclic_prefix_s", "n_subcarriers",
                      "n_symbols"},
                     "ofdm");
      read(*it, "carrier_hz", spec.ofdm.carrier_hz);
      read(*it, "subcarrier_spacing_hz", spec.ofdm.subcarrier_spacing_hz);
      read(*it, "cyclic_prefix_s", spec.ofdm.cyclic_prefix_s);
      read(*it, "n_subcarriers", spec.ofdm.n_subcarriers);
      read(*it, "n_symbols", spec.ofdm.n_symbols);
    }
    if (auto it = root.find("output"); it != root.end()) {
      reject_unknown(*it, {"csv", "svg"}, "output");
      if (auto p = it->find("csv"); p != it->end()) spec.csv_path = p->get<std::string>();
      if (auto p = it->find("svg"); p != it->end()) spec.svg_path = p->get<std::string>();
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config has a field of the wrong type: ") + e.what());
  }
  spec.fmcw.window = spec.window;
  spec.pcfmcw.chirp.window = spec.window;
  spec.pmcw.window = spec.window;
  spec.ofdm.window = spec.window;
  spec.validate();
  return spec;
}

ExperimentSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return spec_from_json(text.str());
}

std::size_t max_transmitters(const ExperimentSpec& spec, Waveform w) {
  switch (w) {
    case Waveform::fmcw_tdm:
      return spec.fmcw.n_slow;
    case Waveform::pmcw:
      return family_for_length(spec.pmcw.code_length).size();
    case Waveform::pcfmcw:
      return family_for_length(spec.pcfmcw.code_length()).size();
    case Waveform::ofdm_fdm:
    case Waveform::ofdm_tfdm:
      return std::min(spec.ofdm.n_subcarriers, ofdm::kMaxTransmitters);
  }
  return 0;
}

Scene scene_for(const ExperimentSpec& spec, Waveform w) {
  double range_bin_m = 0.0;
  double doppler_bin_mps = 0.0;
  switch (w) {
    case Waveform::fmcw_tdm:
      range_bin_m = spec.fmcw.range_bin_m();
      doppler_bin_mps = spec.fmcw.doppler_bin_mps();
      break;
    case Waveform::pmcw:
      range_bin_m = spec.pmcw.range_bin_m();
      doppler_bin_mps = spec.pmcw.doppler_bin_mps();
      break;
    case Waveform::pcfmcw:
      range_bin_m = spec.pcfmcw.chirp.range_bin_m();
      doppler_bin_mps = spec.pcfmcw.chirp.doppler_bin_mps();
      break;
    case Waveform::ofdm_fdm:
    case Waveform::ofdm_tfdm:
      range_bin_m = spec.ofdm.range_bin_m();
      doppler_bin_mps = spec.ofdm.doppler_bin_mps();
      break;
  }
  Scene scene;
  scene.noise_power = spec.noise_power;
  for (const TargetBins& t : spec.targets) {
    scene.targets.push_back(
        {t.range_bin * range_bin_m, t.doppler_bin * doppler_bin_mps, t.amplitude});
  }
  return scene;
}

std::uint64_t trial_seed(const ExperimentSpec& spec, std::size_t trial_index) {
  return derive_seed(spec.seed, trial_index);
}

RangeDopplerMap simulate_tx0_map(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                                 std::uint64_t seed) {
  if (n_tx == 0 || n_tx > max_transmitters(spec, w)) {
    throw std::invalid_argument("n_tx " + std::to_string(n_tx) + " outside [1, " +
                                std::to_string(max_transmitters(spec, w)) + "] for " +
                                std::string(to_string(w)));
  }
  Rng rng(seed);
  const Scene scene = scene_for(spec, w);
  switch (w) {
    case Waveform::fmcw_tdm: {
      const auto schedule = fmcw::make_random_schedule(rng, spec.fmcw.n_slow, n_tx);
      const auto beat = fmcw::simulate_beat(spec.fmcw, schedule, scene, rng);
      return fmcw::process_fmcw(spec.fmcw, schedule, beat, 0);
    }
    case Waveform::pmcw: {
      const auto codes = first_codes(spec.pmcw.code_length, n_tx);
      const auto rx = pmcw::simulate_pmcw_rx(spec.pmcw, codes, scene, rng);
      return pmcw::process_pmcw(spec.pmcw, codes, rx, 0);
    }
    case Waveform::pcfmcw: {
      const auto codes = first_codes(spec.pcfmcw.code_length(), n_tx);
      const auto beat = pcfmcw::simulate_pcfmcw_beat(spec.pcfmcw, codes, scene, rng);
      const auto filtered = pcfmcw::group_delay_filter(spec.pcfmcw, beat);
      return pcfmcw::decode_and_process(spec.pcfmcw, filtered, codes[0], 0);
    }
    case Waveform::ofdm_fdm:
    case Waveform::ofdm_tfdm: {
      const auto mode =
          w == Waveform::ofdm_fdm ? ofdm::AllocationMode::fdm : ofdm::AllocationMode::tfdm;
      const auto alloc = ofdm::make_allocation(rng, spec.ofdm.n_subcarriers,
                                               spec.ofdm.n_symbols, n_tx, mode);
      const auto payload = ofdm::make_payload(rng, alloc);
      const auto rx = ofdm::simulate_ofdm_rx(spec.ofdm, alloc, payload, scene, rng);
      return ofdm::process_ofdm(spec.ofdm, alloc, payload, rx, 0);
    }
  }
  throw std::invalid_argument("unhandled waveform");
}

metrics::IslrReport run_trial(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                              std::size_t trial_index) {
  const std::uint64_t seed = trial_seed(spec, trial_index);
  metrics::IslrReport report;
  try {
    report = metrics::measure(simulate_tx0_map(spec, w, n_tx, seed), spec.guard);
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string(to_string(w)) + " n_tx=" + std::to_string(n_tx) +
                             " trial=" + std::to_string(trial_index) + ": " + e.what());
  }
  report.waveform = std::string(to_string(w));
  report.n_tx = n_tx;
  report.trial = trial_index;
  report.seed = seed;
  return report;
}

std::vector<metrics::IslrReport> run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  struct Task {
    Waveform w;
    std::size_t n_tx;
    std::size_t trial;
  };
  std::vector<Task> tasks;
  for (Waveform w : spec.waveforms) {
    for (std::size_t n : spec.n_tx) {
      for (std::size_t t = 0; t < spec.trials; ++t) tasks.push_back({w, n, t});
    }
  }

  std::vector<metrics::IslrReport> reports(tasks.size());
  std::size_t workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, tasks.size());

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        reports[i] = run_trial(spec, tasks[i].w, tasks[i].n_tx, tasks[i].trial);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return reports;
}

std::string csv_row(const metrics::IslrReport& r) {
  std::string row = r.waveform;
  row += ',' + std::to_string(r.n_tx);
  row += ',' + std::to_string(r.trial);
  row += ',' + std::to_string(r.seed);
  row += ',' + format_double("%.6f", r.islr_range_db);
  row += ',' + format_double("%.6f", r.islr_doppler_db);
  row += ',' + format_double("%.6f", r.islr_2d_db);
  row += ',' + std::to_string(r.peak_range_bin);
  row += ',' + std::to_string(r.peak_doppler_bin);
  row += ',' + format_double("%.9g", r.peak_mag);
  return row;
}

std::string to_csv(const std::vector<metrics::IslrReport>& reports) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : reports) {
    out += csv_row(r);
    out += '\n';
  }
  return out;
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::vector<CurvePoint> summarize(const std::vector<metrics::IslrReport>& reports) {
  std::vector<CurvePoint> points;
  std::map<std::pair<std::string, std::size_t>, std::vector<const metrics::IslrReport*>> groups;
  for (const auto& r : reports) {
    auto key = std::make_pair(r.waveform, r.n_tx);
    if (!groups.contains(key)) points.push_back({r.waveform, r.n_tx});
    groups[key].push_back(&r);
  }
  auto stats = [](const std::vector<const metrics::IslrReport*>& g, auto field) {
    double mean = 0.0;
    for (const auto* r : g) mean += r->*field;
    mean /= static_cast<double>(g.size());
    double var = 0.0;
    for (const auto* r : g) var += (r->*field - mean) * (r->*field - mean);
    const double sd = g.size() > 1 ? std::sqrt(var / static_cast<double>(g.size() - 1)) : 0.0;
    return std::make_pair(mean, sd);
  };
  for (CurvePoint& p : points) {
    const auto& g = groups[{p.waveform, p.n_tx}];
    p.count = g.size();
    std::tie(p.mean_range_db, p.std_range_db) = stats(g, &metrics::IslrReport::islr_range_db);
    std::tie(p.mean_doppler_db, p.std_doppler_db) =
        stats(g, &metrics::IslrReport::islr_doppler_db);
    std::tie(p.mean_2d_db, p.std_2d_db) = stats(g, &metrics::IslrReport::islr_2d_db);
  }
  return points;
}

metrics::IslrReport dump_map(const ExperimentSpec& spec, Waveform w, std::size_t n_tx,
                             const std::filesystem::path& path, std::size_t trial_index) {
  const std::uint64_t seed = trial_seed(spec, trial_index);
  const RangeDopplerMap map = simulate_tx0_map(spec, w, n_tx, seed);
  map_io::write_map(path, map);
  metrics::IslrReport report = metrics::measure(map, spec.guard);
  report.waveform = std::string(to_string(w));
  report.n_tx = n_tx;
  report.trial = trial_index;
  report.seed = seed;
  return report;
}

}  // namespace mimo::harness
