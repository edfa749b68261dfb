#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qw {

using TwoField = std::function<double(double x1, double x2, double t)>;

// theta^{qr}_j(x1,x2,t,dt) = base + dt * rate for q, r in {0,1}, j in {1,2}.
// The coin of sub-step j is exp(-i sum_{qr} theta^{qr}_j sigma_q (x) sigma_r).
class TwoCoinField {
 public:
  TwoCoinField& set(int sub_step, int q, int r, TwoField base, TwoField rate = {});

  double base(int sub_step, int q, int r, double x1, double x2, double t) const;
  double rate(int sub_step, int q, int r, double x1, double x2, double t) const;
  double value(int sub_step, int q, int r, double x1, double x2, double t, double dt) const;
  bool has(int sub_step, int q, int r) const;

 private:
  static int slot(int sub_step, int q, int r);
  std::array<TwoField, 8> base_{};
  std::array<TwoField, 8> rate_{};
};

// Common eigenvectors of sigma_q (x) sigma_r for q, r in {0,1}, coin order
// (up up, up down, down up, down down).
const std::array<Eigen::Vector4cd, 4>& two_coin_eigenvectors();
// lambda^q for the exponent coefficients theta[q][r].
std::array<double, 4> two_coin_eigenvalues(const std::array<std::array<double, 2>, 2>& theta);

Mat4 two_coin(const TwoCoinField& field, int sub_step, double x1, double x2, double t, double dt);
// Direct 4x4 matrix exponential, used as a cross-check of two_coin.
Mat4 two_coin_exponential(const TwoCoinField& field, int sub_step, double x1, double x2, double t, double dt);

// Product of single-particle coins: theta^{00} = f(x1) + g(x2), theta^{10} a
// function of x1 only, theta^{01} of x2 only and theta^{11} = 0.
struct SeparableFactors {
  bool separable = false;
  CoinSchedule first;   // theta^0, theta^1 of particle 1
  CoinSchedule second;  // theta^0, theta^1 of particle 2
  double max_defect = 0.0;
};
SeparableFactors is_separable_form(const TwoCoinField& field, const Lattice& lattice,
                                   const std::vector<double>& times = {0.0, 1.0}, double tol = 1e-10);
// Field whose coins are the tensor products of the two schedules' theta^0/theta^1 coins.
TwoCoinField separable_field(const CoinSchedule& first, const CoinSchedule& second);

// C1^dag(t,0) C2^dag(t,0) S+ C2(t,dt) S- C1(t,dt) with two-particle shifts.
void step_two_particle(TwoParticleState& state, const TwoCoinField& field, double t, double dt);

// psi(c1, c2, x1, x2) -> psi(c2, c1, x2, x1)
void apply_swap(TwoParticleState& state);

// (1/2)[theta^{qr}(x1,x2) + theta^{rq}(x2,x1)]
TwoCoinField exchange_symmetrize(const TwoCoinField& field);

// Dense matrix of a two-particle operator with 2-dim coins.
CMat dense_two_particle_operator(const std::function<void(TwoParticleState&)>& op, const Lattice& lattice);

// H = sum_{qr} [Theta1_qr p1 + Theta2_qr p2 + Xi_qr] sigma_q (x) sigma_r
struct TwoHamiltonianTable {
  std::array<std::array<cplx, 4>, 4> theta1{};
  std::array<std::array<cplx, 4>, 4> theta2{};
  std::array<std::array<cplx, 4>, 4> xi{};
  double residual = 0.0;
  std::vector<std::string> violations;  // components outside the allowed pattern

  bool structural_ok() const { return violations.empty(); }
};

TwoHamiltonianTable two_effective_hamiltonian(const TwoCoinField& field, double x1, double x2, double t,
                                              double probe = 1e-5, double pattern_tol = 1e-6);

}  // namespace qw
