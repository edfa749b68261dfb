#pragma once

#include <array>
#include <vector>

#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qw {

struct CoinAngles {
  double t0 = 0.0;  // global phase angle
  double t1 = 0.0;
  double t2 = 0.0;
  double t3 = 0.0;
};

struct FG {
  cplx F;
  cplx G;
};

// F, G of exp(-i theta.sigma) = [[F, G], [-G*, F*]].
FG fg_from_angles(const CoinAngles& a);
Mat2 u2_from_angles(const CoinAngles& a);

// theta^q_j(x,t,dt) = base^q_j(x,t) + dt * rate^q_j(x,t), j in {1,2}, q in 0..3.
// Unset fields are identically zero.
class CoinSchedule {
 public:
  CoinSchedule& set(int sub_step, int q, Field base, Field rate = {});
  CoinSchedule& set_base(int sub_step, int q, Field base);
  CoinSchedule& set_rate(int sub_step, int q, Field rate);

  double base(int sub_step, int q, double x, double t) const;
  double rate(int sub_step, int q, double x, double t) const;
  double value(int sub_step, int q, double x, double t, double dt) const;
  CoinAngles angles(int sub_step, double x, double t, double dt) const;

  bool has_base(int sub_step, int q) const;
  bool has_rate(int sub_step, int q) const;
  // True when only theta^0 and theta^1 components are set.
  bool in_phase_rotation_family() const;

  static CoinSchedule homogeneous(const CoinAngles& c1, const CoinAngles& c2);

 private:
  static int slot(int sub_step, int q);
  std::array<Field, 8> base_{};
  std::array<Field, 8> rate_{};
};

// One 2x2 block per lattice site.
using PositionDiagonalCoin = std::vector<Mat2>;

PositionDiagonalCoin coin_field(const CoinSchedule& schedule, int sub_step, double t, double dt,
                                const Lattice& lattice);

CMat block_direct_sum(const std::vector<Mat2>& blocks);

struct NonabelianCoinSpec {
  int n = 1;                      // gauge dimension
  std::vector<CMat> generators;   // Lambda_q, q = 0..n^2-1, Lambda_0 = I
  // Coefficient fields per generator; empty entries are zero.
  std::array<std::vector<Field>, 2> omega;  // omega^q_j, index [j-1][q]
  std::array<std::vector<Field>, 2> Omega;  // Omega^q_j

  void validate() const;
  double omega_at(int sub_step, int q, double x, double t) const;
  double Omega_at(int sub_step, int q, double x, double t) const;
};

std::vector<CMat> pauli_generators();      // {I, s1, s2, s3}
std::vector<CMat> gell_mann_generators();  // {I, lambda_1..lambda_8}
NonabelianCoinSpec make_nonabelian_spec(int n);

// exp(-i H) for Hermitian H.
CMat expm_hermitian(const CMat& h, double scale);

// [exp(-i sum theta^q sigma_q) (x) I_N] . [P_up (x) exp(-i dt sum omega Lambda) + P_down (x) exp(-i dt sum Omega Lambda)]
// Coin index layout is spin-major: index = spin * N + gauge.
CMat nonabelian_coin(const CoinSchedule& schedule, const NonabelianCoinSpec& spec, int sub_step, double x,
                     double t, double dt);

double unitarity_defect(const CMat& u);

}  // namespace qw
