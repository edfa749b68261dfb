#pragma once

#include <vector>

#include "qwalk/state.hpp"

namespace qw {

// P(x) = sum_c |psi(c, x)|^2, indexed by storage site.
std::vector<double> position_probability(const WalkState& state);
// Marginal position distribution of particle 1 or 2.
std::vector<double> marginal_probability(const TwoParticleState& state, int particle);

// rho_c = Tr_x |psi><psi|
CMat reduced_coin_state(const WalkState& state);

// -Tr rho ln rho; eigenvalues in [-1e-12, 0) are treated as zero.
double von_neumann_entropy(const CMat& rho);
double entanglement_entropy(const WalkState& state);

// Coin|position negativity of a pure state, from its Schmidt coefficients.
double negativity(const WalkState& state);
// (||rho^{T_A}||_1 - 1)/2 for a dense density matrix on C^dA (x) C^dB.
double negativity(const CMat& rho, int dim_a, int dim_b);

// <psi| A (x) I |psi> for a coin-space Hermitian A.
double coin_expectation(const WalkState& state, const CMat& observable);

double average_late_entropy(const std::vector<double>& series, int window = 10);

// cos(Op/2)|up> + e^{i Oa} sin(Op/2)|down>
CVec bloch_coin(double omega_a, double omega_p);

// Probability mass on sites whose physical position satisfies x < bound.
double probability_below(const WalkState& state, double bound);

}  // namespace qw
