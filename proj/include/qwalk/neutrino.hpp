#pragma once

#include <array>
#include <vector>

#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qw {

enum class Flavor { E = 0, Mu = 1, Tau = 2 };

struct PmnsParams {
  double theta12 = 0.0;
  double theta13 = 0.0;
  double theta23 = 0.0;
  double delta = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  // Normal-ordering global-fit angles (degrees 33.48, 8.50, 42.3), phases 0.
  static PmnsParams global_fit();
};

using Mat3 = Eigen::Matrix3cd;

// R23 . R13(delta) . R12 . diag(e^{i a1/2}, e^{i a2/2}, 1)
Mat3 pmns_matrix(const PmnsParams& p);

struct MassSpectrum {
  double dm21 = 7.50e-5;   // eV^2
  double dm31 = 2.457e-3;  // eV^2
  double dm32 = 2.382e-3;  // eV^2
  double energy = 1.0;     // GeV

  void validate() const;
};

struct WalkCalibration {
  std::array<double, 3> theta{0.001, 0.00615654, 0.0664688};  // theta^1_2(m_j), rad
  double k_tilde = 0.01;                                      // k a, rad
  int steps_short = 450;
  int steps_long = 4500;

  // True when k_tilde >= 10 max theta; logs a warning otherwise.
  bool ultra_relativistic(bool warn = true) const;
};

// |sum_j U*_{aj} e^{-i phase_j} U_{bj}|^2 with phase_j = E_j t.
double analytic_transition_probability(Flavor from, Flavor to, const Mat3& pmns, const std::array<double, 3>& phases);
// Ultra-relativistic form: phase_j = 2.534 dm2_j1 [eV^2] L/E [km/GeV].
double analytic_transition_probability(Flavor from, Flavor to, const Mat3& pmns, const MassSpectrum& spectrum,
                                       double l_over_e);

// Walk quasienergy of sector j at k = k_tilde, in units of 1/step.
double sector_quasienergy(int j, const WalkCalibration& c);

// 6-dim coin amplitudes f|zeta_{2j-1}> + g|zeta_{2j}> of the +E eigenvector.
CVec mass_eigenstate(int j, double k, const WalkCalibration& c);
CVec flavor_coin_state(Flavor alpha, double k, const Mat3& pmns, const WalkCalibration& c);

// One neutrino step restricted to momentum k (6x6, block diagonal).
CMat neutrino_block(double k, const WalkCalibration& c);

using FlavorRow = std::array<double, 3>;  // P_e, P_mu, P_tau

// Walk probabilities for steps 0..n_steps, computed on the 6-dim coin space.
std::vector<FlavorRow> walk_probability_series(Flavor from, int n_steps, const WalkCalibration& c, const Mat3& pmns);
// Analytic probabilities at the exact walk quasienergies.
std::vector<FlavorRow> analytic_probability_series(Flavor from, int n_steps, const WalkCalibration& c,
                                                   const Mat3& pmns);

double walk_transition_probability(Flavor from, Flavor to, int n_steps, const WalkCalibration& c, const Mat3& pmns);

// Angles whose pairwise phases (theta_j^2 - theta_l^2) n / (2 k_tilde) reproduce
// the experimental 2.534 dm2 L/E. theta_1 and k_tilde are held fixed.
// Throws std::domain_error (with the minimal feasible step count) when any
// angle would reach 0.3 rad.
WalkCalibration map_experiment_to_walk(const MassSpectrum& spectrum, int target_steps, double l_over_e,
                                       double k_tilde = 0.01, double theta1 = 0.001);
// Smallest step count for which map_experiment_to_walk succeeds.
long minimal_feasible_steps(const MassSpectrum& spectrum, double l_over_e, double k_tilde = 0.01,
                            double theta1 = 0.001);

struct PhysicalStepCount {
  double steps = 0.0;
  bool feasible = false;  // steps <= 1e9
};
// Steps needed to cover a baseline of `length_km` with a physical step dt (s).
PhysicalStepCount physical_step_count(double length_km, double dt_seconds);

// Gaussian wavepacket sum_k p(k) |nu_alpha(k)> (x) |k> over the grid momenta
// in [k0 - eps/a, k0 + eps/a].
WalkState gaussian_flavor_state(Flavor alpha, double k0, double width, double eps, const Mat3& pmns,
                                const WalkCalibration& c, const Lattice& lattice);

// Entanglement entropy of the 6-dim coin after each of 0..n_steps steps.
std::vector<double> oscillation_entropy_series(WalkState state, const WalkCalibration& c, int n_steps);

// Flavor content using per-k flavor projectors built from the same (f, g).
FlavorRow wavepacket_flavor_probabilities(const WalkState& state, const Mat3& pmns, const WalkCalibration& c);

// Basis relabelings of the 6-dim coin onto smaller registers.
std::array<const char*, 6> three_qubit_labels();
std::array<const char*, 6> qubit_qutrit_labels();

}  // namespace qw
