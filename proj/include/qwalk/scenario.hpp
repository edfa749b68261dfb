#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/engines.hpp"
#include "qwalk/neutrino.hpp"
#include "qwalk/state.hpp"

namespace qw {

enum class EngineKind { DQW, SSDQW, DCA, Modified, Neutrino };

struct ScenarioObservables {
  bool probability = true;    // final distribution
  bool heatmap = false;       // distribution after every step
  bool entropy = false;
  bool oscillation = false;   // neutrino flavor probabilities
};

struct Scenario {
  std::string name;
  EngineKind engine = EngineKind::Modified;
  int sites = 101;
  double L = 1.0;  // lattice spacing and time step are 1/L
  int n_steps = 100;
  int start_step = 0;
  double mass = 0.04;

  CoinSchedule schedule;  // SSDQW, Modified
  CoinAngles coin;        // DQW
  double eta1 = 1.0;      // DCA
  double eta2 = 0.0;
  WalkCalibration calibration;  // Neutrino
  PmnsParams pmns;
  Flavor flavor = Flavor::E;

  std::optional<WalkState> initial;
  std::vector<Scenario> parts;  // sub-runs written to their own directories
  ScenarioObservables observables;
  double memory_budget_mb = 2048.0;
  std::string source;  // text hashed into the manifest
  std::vector<std::string> warnings;

  double dt() const { return 1.0 / L; }
  Lattice lattice() const { return Lattice(sites, 1.0 / L); }
  // Walk engine for every kind except Neutrino.
  Engine walk_engine() const;
};

class ConfigError : public std::runtime_error {
 public:
  // Syntax errors carry a line and column; semantic errors a key path.
  ConfigError(const std::string& msg, int line, int column);
  ConfigError(const std::string& msg, const std::string& key_path);
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& key_path() const { return key_path_; }

 private:
  int line_ = 0;
  int column_ = 0;
  std::string key_path_;
};

// Sectioned key = value text; '#' starts a comment.
Scenario parse_config(const std::string& text);

const std::vector<std::string>& builtin_scenario_names();
// The curved scenarios plus neutrino_short, neutrino_long and dca_vs_dqw.
Scenario builtin_scenario(const std::string& name);

struct RunReport {
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
  double max_norm_drift = 0.0;
};

// Estimated peak memory of a run, in MB.
double estimated_memory_mb(const Scenario& scenario);

// Writes one CSV per requested observable plus manifest.txt into out_dir.
// Throws std::runtime_error before running when the estimate exceeds the budget.
RunReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

// 64-bit FNV-1a, used for the manifest config hash.
std::uint64_t fnv1a(const std::string& text);
std::string library_version();

}  // namespace qw
