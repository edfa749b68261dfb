#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

#include <fmt/format.h>
#include <fmt/os.h>
#include <spdlog/spdlog.h>

#include "qwalk/scenario.hpp"

namespace qw {

namespace {

const char* engine_name(EngineKind k) {
  switch (k) {
    case EngineKind::DQW: return "dqw";
    case EngineKind::SSDQW: return "ssdqw";
    case EngineKind::DCA: return "dca";
    case EngineKind::Modified: return "modified";
    case EngineKind::Neutrino: return "neutrino";
  }
  return "?";
}

// Storage sites ordered by physical position.
std::vector<int> ordered_sites(const Lattice& lat) {
  std::vector<int> out;
  const int n = lat.sites;
  for (int s = -(n / 2); s <= (n + 1) / 2 - 1; ++s) out.push_back(lat.wrap(s));
  return out;
}

void write_manifest(const Scenario& sc, const std::filesystem::path& dir, const RunReport& rep) {
  std::ofstream m(dir / "manifest.txt");
  m << fmt::format("name={}\n", sc.name);
  m << fmt::format("engine={}\n", sc.parts.empty() ? engine_name(sc.engine) : "composite");
  m << fmt::format("version={}\n", library_version());
  m << fmt::format("config_hash={:016x}\n", fnv1a(sc.source));
  m << fmt::format("sites={}\n", sc.sites);
  m << fmt::format("L={:.17g}\n", sc.L);
  m << fmt::format("steps={}\n", sc.n_steps);
  m << fmt::format("max_norm_drift={:.17g}\n", rep.max_norm_drift);
  m << fmt::format("wall_time_s={:.6f}\n", rep.wall_seconds);
  for (const auto& w : sc.warnings) m << fmt::format("warning={}\n", w);
}

void run_neutrino(const Scenario& sc, const std::filesystem::path& dir, RunReport& rep) {
  const auto rows = walk_probability_series(sc.flavor, sc.n_steps, sc.calibration, pmns_matrix(sc.pmns));
  const auto path = dir / "oscillation.csv";
  auto out = fmt::output_file(path.string());
  out.print("step,t,P_e,P_mu,P_tau\n");
  for (int i = 1; i <= sc.n_steps; ++i) {
    const auto& r = rows[i];
    out.print("{},{:.17g},{:.17g},{:.17g},{:.17g}\n", i, i * sc.dt(), r[0], r[1], r[2]);
    rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(r[0] + r[1] + r[2] - 1.0));
  }
  rep.files.push_back(path);
}

void run_walk(const Scenario& sc, const std::filesystem::path& dir, RunReport& rep) {
  if (!sc.initial) throw std::invalid_argument("scenario '" + sc.name + "' has no initial state");
  const Engine engine = sc.walk_engine();
  ObservableSet rec;
  rec.probability = sc.observables.probability || sc.observables.heatmap;
  rec.entropy = sc.observables.entropy;
  rec.start_step = sc.start_step;
  const Trajectory tr = evolve(*sc.initial, engine, sc.n_steps, rec);
  for (double n : tr.norms) rep.max_norm_drift = std::max(rep.max_norm_drift, std::abs(n - 1.0));
  const Lattice& lat = sc.initial->lattice;
  const auto sites = ordered_sites(lat);

  auto write_rows = [&](const std::string& file, int first, int last) {
    const auto path = dir / file;
    auto out = fmt::output_file(path.string());
    out.print("step,x,prob\n");
    for (int i = first; i <= last; ++i)
      for (int s : sites) out.print("{},{:.17g},{:.17g}\n", i, lat.position(s), tr.probability[i][s]);
    rep.files.push_back(path);
  };
  if (sc.observables.heatmap) write_rows("heatmap.csv", 1, sc.n_steps);
  if (sc.observables.probability) write_rows("probability.csv", sc.n_steps, sc.n_steps);
  if (sc.observables.entropy) {
    const auto path = dir / "entropy.csv";
    auto out = fmt::output_file(path.string());
    out.print("step,entropy\n");
    for (int i = 1; i <= sc.n_steps; ++i) out.print("{},{:.17g}\n", i, tr.entropy[i]);
    rep.files.push_back(path);
  }
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string library_version() { return QW_VERSION; }

double estimated_memory_mb(const Scenario& sc) {
  double bytes = 0.0;
  for (const auto& p : sc.parts) bytes = std::max(bytes, estimated_memory_mb(p) * 1e6);
  if (sc.engine == EngineKind::Neutrino) {
    bytes = std::max(bytes, 64.0 * (sc.n_steps + 1));
  } else {
    const double coin = sc.engine == EngineKind::Neutrino ? 6.0 : 2.0;
    const double n = sc.sites;
    double b = 8.0 * coin * n * 16.0;  // state plus coin-field scratch
    if (sc.observables.probability || sc.observables.heatmap) b += (sc.n_steps + 1.0) * n * 8.0;
    bytes = std::max(bytes, b);
  }
  return bytes / 1e6;
}

RunReport run_scenario(const Scenario& sc, const std::filesystem::path& out_dir) {
  const double need = estimated_memory_mb(sc);
  if (need > sc.memory_budget_mb)
    throw std::runtime_error(fmt::format("scenario '{}' needs about {:.1f} MB, over the {:.1f} MB budget", sc.name,
                                         need, sc.memory_budget_mb));
  std::filesystem::create_directories(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  RunReport rep;
  for (const auto& w : sc.warnings) spdlog::warn("{}: {}", sc.name, w);
  if (!sc.parts.empty()) {
    for (const auto& p : sc.parts) {
      const RunReport sub = run_scenario(p, out_dir / p.name);
      rep.files.insert(rep.files.end(), sub.files.begin(), sub.files.end());
      rep.max_norm_drift = std::max(rep.max_norm_drift, sub.max_norm_drift);
    }
  } else if (sc.engine == EngineKind::Neutrino) {
    run_neutrino(sc, out_dir, rep);
  } else {
    run_walk(sc, out_dir, rep);
  }
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(sc, out_dir, rep);
  rep.files.push_back(out_dir / "manifest.txt");
  return rep;
}

}  // namespace qw
