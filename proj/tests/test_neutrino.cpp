#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qwalk/neutrino.hpp"
#include "qwalk/observables.hpp"

using namespace qw;

namespace {

Mat3 real_pmns() { return pmns_matrix(PmnsParams::global_fit()); }

}  // namespace

TEST(Pmns, ZeroAnglesGiveIdentity) {
  EXPECT_LT((pmns_matrix(PmnsParams{}) - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Pmns, RealWithoutPhases) {
  EXPECT_LT(real_pmns().imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Pmns, UnitaryForRandomAngles) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(0.0, 6.283);
  for (int i = 0; i < 50; ++i) {
    const PmnsParams p{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const Mat3 m = pmns_matrix(p);
    EXPECT_LT((m * m.adjoint() - Mat3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Analytic, InitialTimeIsDiagonal) {
  const Mat3 u = real_pmns();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      EXPECT_NEAR(analytic_transition_probability(Flavor(a), Flavor(b), u, {0.0, 0.0, 0.0}), a == b ? 1.0 : 0.0,
                  1e-15);
}

TEST(Analytic, ProbabilitiesSumToOne) {
  PmnsParams p = PmnsParams::global_fit();
  p.delta = 1.2;
  const Mat3 u = pmns_matrix(p);
  for (double le : {10.0, 500.0, 12345.0}) {
    double total = 0.0;
    for (int b = 0; b < 3; ++b) total += analytic_transition_probability(Flavor::Mu, Flavor(b), u, MassSpectrum{}, le);
    EXPECT_NEAR(total, 1.0, 1e-12);
  }
}

TEST(Spectrum, RejectsInconsistentSplittings) {
  MassSpectrum m;
  m.dm32 = 1e-3;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

TEST(MassEigenstate, IsWalkEigenvector) {
  const WalkCalibration c;
  const CMat block = neutrino_block(c.k_tilde, c);
  for (int j = 0; j < 3; ++j) {
    const CVec v = mass_eigenstate(j, c.k_tilde, c);
    EXPECT_NEAR(v.norm(), 1.0, 1e-14);
    const CVec w = block * v;
    const cplx expect = std::exp(-kI * sector_quasienergy(j, c));
    EXPECT_LT((w - expect * v).norm(), 1e-12) << j;
  }
}

TEST(MassEigenstate, SectorsAreOrthogonal) {
  const WalkCalibration c;
  const CVec a = mass_eigenstate(0, c.k_tilde, c), b = mass_eigenstate(2, c.k_tilde, c);
  EXPECT_EQ(std::abs(a.dot(b)), 0.0);
}

TEST(Walk, StartsInInitialFlavor) {
  const WalkCalibration c;
  const auto rows = walk_probability_series(Flavor::E, 3, c, real_pmns());
  EXPECT_NEAR(rows[0][0], 1.0, 1e-14);
  EXPECT_NEAR(rows[0][1], 0.0, 1e-14);
}

TEST(Walk, AgreesWithAnalyticAtWalkQuasienergies) {
  const WalkCalibration c;
  const Mat3 u = real_pmns();
  const auto walk = walk_probability_series(Flavor::E, c.steps_long, c, u);
  const auto exact = analytic_probability_series(Flavor::E, c.steps_long, c, u);
  double worst = 0.0, drift = 0.0;
  for (std::size_t n = 0; n < walk.size(); ++n) {
    for (int b = 0; b < 3; ++b) worst = std::max(worst, std::abs(walk[n][b] - exact[n][b]));
    drift = std::max(drift, std::abs(walk[n][0] + walk[n][1] + walk[n][2] - 1.0));
  }
  EXPECT_LT(worst, 1e-10);
  EXPECT_LT(drift, 1e-12);
}

TEST(Calibration, CalibratedAnglesViolateUltraRelativisticMargin) {
  const WalkCalibration c;
  EXPECT_FALSE(c.ultra_relativistic(false));
}

TEST(Mapping, AngleRatiosMatchSplittings) {
  const MassSpectrum m;
  const WalkCalibration c = map_experiment_to_walk(m, 450, 500.0);
  const double s1 = c.theta[0] * c.theta[0], s2 = c.theta[1] * c.theta[1], s3 = c.theta[2] * c.theta[2];
  EXPECT_NEAR((s3 - s2) / (s2 - s1), m.dm32 / m.dm21, 1e-6 * m.dm32 / m.dm21);
}

TEST(Mapping, ZoomRuleKeepsPhases) {
  const MassSpectrum m;
  const WalkCalibration a = map_experiment_to_walk(m, 400, 300.0, 0.01, 0.0);
  const WalkCalibration b = map_experiment_to_walk(m, 1600, 300.0, 0.01, 0.0);
  EXPECT_EQ(a.theta[0], 0.0);
  for (int j = 1; j < 3; ++j) EXPECT_NEAR(a.theta[j] / b.theta[j], 2.0, 1e-12);
}

TEST(Mapping, InfeasibleReportsMinimalSteps) {
  const MassSpectrum m;
  const long need = minimal_feasible_steps(m, 40000.0);
  EXPECT_THROW(map_experiment_to_walk(m, static_cast<int>(need - 1), 40000.0), std::domain_error);
  EXPECT_NO_THROW(map_experiment_to_walk(m, static_cast<int>(need), 40000.0));
  try {
    map_experiment_to_walk(m, 1, 40000.0);
  } catch (const std::domain_error& e) {
    EXPECT_NE(std::string(e.what()).find(std::to_string(need)), std::string::npos);
  }
}

TEST(Mapping, PlanckScaleStepsAreInfeasible) {
  const double planck_time = 5.3912e-44;
  for (double km : {4135.0, 40100.0}) {
    const PhysicalStepCount r = physical_step_count(km, planck_time);
    EXPECT_FALSE(r.feasible);
    EXPECT_GT(r.steps, 1e41);
    EXPECT_LT(r.steps, 1e44);
  }
}

TEST(Wavepacket, SinglePointIsMomentumEigenstate) {
  const WalkCalibration c;
  const Lattice lat(629, 1.0);
  const WalkState s = gaussian_flavor_state(Flavor::E, 0.01, 100.0, 1e-4, real_pmns(), c, lat);
  EXPECT_NEAR(norm(s), 1.0, 1e-12);
  for (double e : oscillation_entropy_series(s, c, 30)) EXPECT_NEAR(e, 0.0, 1e-12);
}

TEST(Wavepacket, EmptyWindowRejected) {
  const Lattice lat(16, 1.0);
  EXPECT_THROW(gaussian_flavor_state(Flavor::E, 0.1, 1.0, 1e-6, real_pmns(), WalkCalibration{}, lat),
               std::invalid_argument);
}

TEST(Wavepacket, EntropyGrowsWithWindowAndStaysBounded) {
  const WalkCalibration c;
  const Lattice lat(6283, 1.0);
  std::vector<double> late;
  for (double eps : {0.05, 0.15, 0.25}) {
    const WalkState s = gaussian_flavor_state(Flavor::E, 0.01, 100.0, eps, real_pmns(), c, lat);
    const auto series = oscillation_entropy_series(s, c, 60);
    for (double e : series) {
      EXPECT_GE(e, -1e-12);
      EXPECT_LE(e, std::log(6.0) + 1e-12);
    }
    late.push_back(average_late_entropy(series, 20));
  }
  EXPECT_LT(late[0], late[1]);
  EXPECT_LT(late[1], late[2]);
}

TEST(Wavepacket, FlavorProbabilitiesStartInE) {
  const WalkCalibration c;
  const Lattice lat(6283, 1.0);
  const WalkState s = gaussian_flavor_state(Flavor::E, 0.01, 100.0, 0.05, real_pmns(), c, lat);
  const FlavorRow p = wavepacket_flavor_probabilities(s, real_pmns(), c);
  EXPECT_NEAR(p[0], 1.0, 1e-10);
  EXPECT_NEAR(p[0] + p[1] + p[2], 1.0, 1e-10);
}

TEST(Encodings, LabelTablesCoverSixStates) {
  const auto q = three_qubit_labels();
  const auto r = qubit_qutrit_labels();
  EXPECT_STREQ(q[0], "000");
  EXPECT_EQ(q.size(), 6u);
  EXPECT_EQ(r.size(), 6u);
}
