#pragma once

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/coin.hpp"
#include "qwalk/types.hpp"

namespace qw {

// H = sum_r Xi_r sigma_r + sum_r Theta_r sigma_r p   (natural units)
struct HamiltonianCoefficients {
  std::array<cplx, 4> theta{};  // theta[0] is not part of the model and should vanish
  std::array<cplx, 4> xi{};
  double residual = 0.0;        // Richardson residual of a numeric extraction

  double max_difference(const HamiltonianCoefficients& other) const;
};

// Closed forms for schedules with theta^2 = theta^3 = 0. Spatial derivatives
// of the dt = 0 angles use central differences with step h. Throws
// std::invalid_argument outside that family.
HamiltonianCoefficients closed_form_coefficients(const CoinSchedule& schedule, double x, double t, double h);

// Extraction from the modified step on a local patch. probe <= 0 picks a
// probe step from the local field gradients.
HamiltonianCoefficients numeric_coefficients(const CoinSchedule& schedule, double x, double t, double probe = 0.0);

// max_r |Im Xi_r + (1/2) d/dx Theta_r| from numeric extractions at x and x +- h.
double hermiticity_residual(const CoinSchedule& schedule, double x, double t, double h);

// Largest |d/dx theta^q_j| and |rate^q_j| near x.
double local_gradient_scale(const CoinSchedule& schedule, double x, double t);

// How the spatial gauge component relates to d/dx theta^0_1.
//   Consistent: A1 = d/dx theta^0_1, which makes Xi_3 = -Theta_3 A1.
//   Secant:     A1 = sec(2 theta^1_1) d/dx theta^0_1.
enum class GaugeConvention { Consistent, Secant };

// Mass convention. Fundamental: m fixed, e^0_(0) solved from the mass
// relation. Emergent: e^0_(0) = 1 and the mass field varies.
enum class MassMode { Fundamental, Emergent };

struct VielbeinField1p1 {
  Field e00 = [](double, double) { return 1.0; };
  Field e11 = [](double, double) { return 1.0; };
  Field A0 = [](double, double) { return 0.0; };
  Field A1 = [](double, double) { return 0.0; };
  Field mass = [](double, double) { return 0.0; };
};

// theta^1_1 = acos(e11/e00)/2, theta^1_2 = -2 theta^1_1, rate^1_1 = -d/dx theta^1_1,
// rate^1_2 = m/e00, rate^0_1 = -A0, theta^0_2 = rate^0_2 = 0, theta^0_1 from
// integrating its gradient from x = 0. Fields are evaluated lazily; a ratio
// |e11/e00| > 1 raises std::domain_error at evaluation.
CoinSchedule schedule_from_metric_1p1(const VielbeinField1p1& field, GaugeConvention convention = GaugeConvention::Consistent);

struct Metric1p1 {
  double e00 = 1.0;
  double e11 = 1.0;
  Eigen::Matrix2d g = Eigen::Matrix2d::Identity();  // g^{mu nu}
};

// Requires theta^1_2 = -2 theta^1_1 at (x, t).
Metric1p1 metric_from_schedule(const CoinSchedule& schedule, double x, double t, MassMode mode, double mass = 0.0);

struct GaugeFields1p1 {
  double A0 = 0.0;
  double A1 = 0.0;
  double mass_over_e00 = 0.0;
};
GaugeFields1p1 gauge_from_schedule(const CoinSchedule& schedule, double x, double t,
                                   GaugeConvention convention = GaugeConvention::Consistent);

// Sign convention of the 2+1 solution.
//   Consistent: A1 = +d/dx theta^0_1, A2 = k_y + d/dx theta^0_2.
//   Flipped:    A1 = -d/dx theta^0_1, A2 = k_y - d/dx theta^0_2.
enum class ReductionSigns { Consistent, Flipped };

struct Reduction2p1 {
  double A0 = 0.0, A1 = 0.0, A2 = 0.0;
  double e00 = 1.0;
  double mass = 0.0;
  // e^mu_(a) / e^0_(0)
  double q20 = 0.5, q11 = 0.0, q12 = 0.0, q21 = 0.0, q22 = 0.0;
  Eigen::Matrix3d metric = Eigen::Matrix3d::Zero();  // g^{mu nu}
  std::array<double, 6> residuals{};                 // the six matching equations
};

Reduction2p1 reduce_2plus1(const CoinSchedule& schedule, double k_y, double x, double t, MassMode mode,
                           double mass = 0.0, ReductionSigns signs = ReductionSigns::Consistent);

// Closed-form metric block with g11 = -1/4 - cos^2(theta12)/2, kept for comparison.
Eigen::Matrix3d reference_metric_2plus1(double theta12, double e00);

// chi[r][q]: coefficient of sigma_r (x) Lambda_q added by the gauge part of the coin.
using ChiCoefficients = std::array<std::vector<double>, 4>;

ChiCoefficients chi_coefficients(const CoinSchedule& schedule, const NonabelianCoinSpec& spec, double x, double t);

// Numeric sigma_r (x) Lambda_q components of the extracted generator.
struct NonabelianComponents {
  std::array<std::vector<cplx>, 4> xi;     // [r][q]
  std::array<std::vector<cplx>, 4> theta;  // [r][q]
};
NonabelianComponents numeric_nonabelian_components(const CoinSchedule& schedule, const NonabelianCoinSpec& spec,
                                                   double x, double t, double probe = 0.0);

// ||(U(t, dt) - I) psi|| for a Gaussian test state of physical width `width`
// centred at x = 0 with coin (up + i down)/sqrt(2), on a lattice of spacing dt.
double identity_deviation(const CoinSchedule& schedule, double t, double dt, double width = 0.05);

}  // namespace qw
