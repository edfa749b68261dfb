#pragma once

#include <array>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/shift.hpp"
#include "qwalk/state.hpp"

namespace qw {

struct DqwEngine {
  CoinAngles coin;
};
struct SsdqwEngine {
  CoinSchedule schedule;
  double dt = 1.0;
};
struct DcaEngine {
  double eta1 = 1.0;
  double eta2 = 0.0;
};
struct ModifiedEngine {
  CoinSchedule schedule;
  double dt = 1.0;
};
struct NeutrinoEngine {
  std::array<double, 3> theta{};
};
struct NonabelianEngine {
  CoinSchedule schedule;
  NonabelianCoinSpec spec;
  double dt = 1.0;
};

using Engine = std::variant<DqwEngine, SsdqwEngine, DcaEngine, ModifiedEngine, NeutrinoEngine, NonabelianEngine>;

void apply_coin_field(WalkState& state, const PositionDiagonalCoin& coin, bool adjoint = false);

void step_dqw(WalkState& state, const CoinAngles& coin);
void step_ssdqw(WalkState& state, const CoinSchedule& schedule, double t, double dt);
void step_dca(WalkState& state, double eta1, double eta2);
// C1^dag(t,0) C2^dag(t,0) S+ C2(t,dt) S- C1(t,dt). With dt = 0 the lattice
// spacing a = dt vanishes as well, so the shifts reduce to the identity.
void step_modified(WalkState& state, const CoinSchedule& schedule, double t, double dt);
void step_neutrino(WalkState& state, const std::array<double, 3>& theta);
void step_nonabelian_modified(WalkState& state, const CoinSchedule& schedule, const NonabelianCoinSpec& spec,
                              double t, double dt);

// One step of `engine` at step index `step_index` (physical time step_index*dt).
void step(WalkState& state, const Engine& engine, int step_index);
double engine_dt(const Engine& engine);
int engine_coin_dim(const Engine& engine);

struct ObservableSet {
  bool probability = false;
  bool entropy = false;
  std::optional<CMat> coin_observable;
  int start_step = 0;  // step index of the first applied step
};

struct Trajectory {
  std::vector<double> norms;
  std::vector<std::vector<double>> probability;
  std::vector<double> entropy;
  std::vector<double> expectation;
  WalkState final_state;
  double boundary_probability = 0.0;
};

// Records the initial state and every subsequent step (n_steps + 1 entries).
Trajectory evolve(WalkState state, const Engine& engine, int n_steps, const ObservableSet& record);

std::vector<double> expectation_series(WalkState state, const CMat& observable, const Engine& engine, int n_steps);

// Exact classical walk: heads (probability pH) moves +a, tails -a.
std::vector<double> crw_distribution(double pH, int n_steps, int initial_site, const Lattice& lattice);

// Probability on the two sites where the centred lattice wraps around.
double boundary_probability(const WalkState& state);

// Dense matrix of a single-particle step, built column by column.
CMat dense_operator(const std::function<void(WalkState&)>& op, int coin_dim, const Lattice& lattice);

}  // namespace qw
