#pragma once

#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"

namespace qw {

// One of the built-in curved-background runs of the modified walk. The
// lattice spacing and time step are both 1/L.
struct CurvedScenario {
  std::string name;
  double L = 1.0;
  Lattice lattice;
  CoinSchedule schedule;
  WalkState initial;
  int n_steps = 0;
  int start_step = 0;  // step index of the first step
  double mass = 0.04;
  std::string description;  // background and potential in words

  double dt() const { return 1.0 / L; }
};

const std::vector<std::string>& curved_scenario_names();

// Throws std::invalid_argument listing the valid names for an unknown name.
CurvedScenario curved_scenario(const std::string& name);

}  // namespace qw
