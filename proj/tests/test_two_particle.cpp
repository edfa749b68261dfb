#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qwalk/engines.hpp"
#include "qwalk/two_particle.hpp"

using namespace qw;

namespace {

TwoCoinField random_two_field(std::mt19937& rng, bool mixed = true) {
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  TwoCoinField f;
  for (int j = 1; j <= 2; ++j)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r) {
        if (!mixed && q == 1 && r == 1) continue;
        const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng), d0 = u(rng), d1 = u(rng);
        f.set(j, q, r,
              [=](double x1, double x2, double t) { return c0 + c1 * std::sin(x1 + 2 * x2) + c2 * x1 * x2 + c3 * t; },
              [=](double x1, double x2, double) { return d0 + d1 * std::cos(x1 - x2); });
      }
  return f;
}

TwoParticleState random_two_state(std::mt19937& rng, const Lattice& lat) {
  std::normal_distribution<double> g;
  TwoParticleState s(2, 2, lat);
  for (auto& a : s.amplitudes) a = cplx(g(rng), g(rng));
  s.amplitudes.normalize();
  return s;
}

WalkState random_state(std::mt19937& rng, const Lattice& lat) {
  std::normal_distribution<double> g;
  WalkState s(2, lat);
  for (auto& a : s.amplitudes) a = cplx(g(rng), g(rng));
  s.amplitudes.normalize();
  return s;
}

TwoParticleState product(const WalkState& a, const WalkState& b) {
  TwoParticleState s(2, 2, a.lattice);
  const int n = a.lattice.sites;
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2)
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2) s.at(c1, c2, x1, x2) = a.at(c1, x1) * b.at(c2, x2);
  return s;
}

}  // namespace

TEST(TwoCoin, ZeroFieldIsFreeTransport) {
  const TwoCoinField f;
  EXPECT_LT((two_coin(f, 1, 0.1, 0.2, 0.0, 0.01) - Mat4::Identity()).norm(), 1e-15);
  const Lattice lat(5, 0.2);
  TwoParticleState s(2, 2, lat);
  s.at(0, 1, lat.wrap(0), lat.wrap(1)) = 1.0;
  step_two_particle(s, f, 0.0, 0.2);
  // up moves right, down moves left
  EXPECT_NEAR(std::abs(s.at(0, 1, lat.wrap(1), lat.wrap(0))), 1.0, 1e-15);
}

TEST(TwoCoin, ConstantPhaseOnlyGivesGlobalPhase) {
  TwoCoinField f;
  f.set(1, 0, 0, [](double, double, double) { return 0.3; }, [](double, double, double) { return 0.7; });
  f.set(2, 0, 0, [](double, double, double) { return -0.1; }, [](double, double, double) { return 0.2; });
  const Lattice lat(6, 0.1);
  std::mt19937 rng(2);
  TwoParticleState s = random_two_state(rng, lat);
  TwoParticleState free = s;
  step_two_particle(s, f, 0.0, 0.1);
  step_two_particle(free, TwoCoinField{}, 0.0, 0.1);
  EXPECT_LT((s.amplitudes - std::exp(-kI * 0.9 * 0.1) * free.amplitudes).norm(), 1e-13);
}

TEST(TwoCoin, EigenFormMatchesExponential) {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const TwoCoinField f = random_two_field(rng);
    for (int j : {1, 2}) {
      const Mat4 a = two_coin(f, j, 0.3, -0.2, 0.1, 0.05), b = two_coin_exponential(f, j, 0.3, -0.2, 0.1, 0.05);
      EXPECT_LT((a - b).norm(), 1e-12);
      EXPECT_LT((a.adjoint() * a - Mat4::Identity()).norm(), 1e-13);
    }
  }
}

TEST(TwoCoin, EigenvectorsDiagonalizeGenerators) {
  const auto& psi = two_coin_eigenvectors();
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) EXPECT_NEAR(std::abs(psi[k].dot(psi[l])), k == l ? 1.0 : 0.0, 1e-15);
  std::array<std::array<double, 2>, 2> th{};
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r) {
      th = {};
      th[q][r] = 1.0;
      const auto lambda = two_coin_eigenvalues(th);
      Mat4 gen;
      gen.setZero();
      gen.block<2, 2>(0, 0) = pauli(q)(0, 0) * pauli(r);
      gen.block<2, 2>(0, 2) = pauli(q)(0, 1) * pauli(r);
      gen.block<2, 2>(2, 0) = pauli(q)(1, 0) * pauli(r);
      gen.block<2, 2>(2, 2) = pauli(q)(1, 1) * pauli(r);
      for (int k = 0; k < 4; ++k) EXPECT_LT((gen * psi[k] - lambda[k] * psi[k]).norm(), 1e-14);
    }
}

TEST(TwoCoin, RejectsOutOfRangeIndices) {
  TwoCoinField f;
  EXPECT_THROW(f.set(1, 2, 0, [](double, double, double) { return 0.0; }), std::invalid_argument);
  EXPECT_THROW(f.set(1, 0, 3, [](double, double, double) { return 0.0; }), std::invalid_argument);
}

TEST(Separable, DetectsAdditiveForm) {
  CoinSchedule a, b;
  a.set(1, 0, [](double x, double t) { return x * x + t; }, [](double x, double) { return 0.2 * x; });
  a.set(1, 1, [](double x, double) { return 0.4 + 0.1 * x; });
  a.set(2, 1, [](double, double t) { return -0.3 * t; }, [](double, double) { return 0.04; });
  b.set(1, 0, [](double x, double) { return std::sin(x); });
  b.set(2, 1, [](double x, double) { return 0.2 * x; }, [](double x, double) { return x; });
  const TwoCoinField f = separable_field(a, b);
  const Lattice lat(12, 0.1);
  const SeparableFactors s = is_separable_form(f, lat);
  ASSERT_TRUE(s.separable);
  EXPECT_LT(s.max_defect, 1e-12);
  for (double x1 : {-0.3, 0.2})
    for (double x2 : {-0.1, 0.4}) {
      const double t = 0.5;
      for (int j : {1, 2}) {
        EXPECT_NEAR(s.first.base(j, 0, x1, t) + s.second.base(j, 0, x2, t), f.base(j, 0, 0, x1, x2, t), 1e-14);
        EXPECT_NEAR(s.first.rate(j, 1, x1, t), a.rate(j, 1, x1, t), 1e-14);
        EXPECT_NEAR(s.second.base(j, 1, x2, t), b.base(j, 1, x2, t), 1e-14);
      }
    }
}

TEST(Separable, ZeroFieldIsSeparable) { EXPECT_TRUE(is_separable_form(TwoCoinField{}, Lattice(6, 0.2)).separable); }

TEST(Separable, InteractionBreaksSeparability) {
  TwoCoinField f;
  f.set(1, 1, 1, [](double, double, double) { return 0.1; });
  EXPECT_FALSE(is_separable_form(f, Lattice(6, 0.2)).separable);
  TwoCoinField g;
  g.set(1, 0, 0, [](double x1, double x2, double) { return x1 * x2; });
  EXPECT_FALSE(is_separable_form(g, Lattice(6, 0.2)).separable);
  TwoCoinField h;
  h.set(2, 1, 0, [](double x1, double x2, double) { return x1 + x2; });
  EXPECT_FALSE(is_separable_form(h, Lattice(6, 0.2)).separable);
}

TEST(Separable, StepFactorizes) {
  std::mt19937 rng(4);
  const TwoCoinField f = random_two_field(rng, false);
  // random_two_field couples x1 and x2 inside every component, so build a separable one explicitly
  CoinSchedule a, b;
  a.set(1, 0, [](double x, double) { return 0.5 * x; }, [](double, double) { return 0.1; });
  a.set(1, 1, [](double x, double t) { return 0.3 + std::sin(x) + t; }, [](double x, double) { return x; });
  a.set(2, 1, [](double x, double) { return -0.6 + 0.2 * x; }, [](double, double) { return 0.04; });
  b.set(2, 0, [](double x, double) { return x * x; });
  b.set(1, 1, [](double x, double) { return 0.1 * x; }, [](double, double) { return -0.3; });
  const TwoCoinField sep = separable_field(a, b);
  const Lattice lat(8, 0.125);
  const double t = 0.25, dt = 0.125;
  for (int i = 0; i < 3; ++i) {
    WalkState p = random_state(rng, lat), q = random_state(rng, lat);
    TwoParticleState joint = product(p, q);
    step_two_particle(joint, sep, t, dt);
    step_modified(p, a, t, dt);
    step_modified(q, b, t, dt);
    EXPECT_LT((joint.amplitudes - product(p, q).amplitudes).norm(), 1e-12);
  }
  EXPECT_FALSE(is_separable_form(f, lat).separable);
}

TEST(TwoStep, Unitary) {
  std::mt19937 rng(5);
  const TwoCoinField f = random_two_field(rng);
  const Lattice lat(6, 1.0 / 6);
  const CMat u = dense_two_particle_operator([&](TwoParticleState& s) { step_two_particle(s, f, 0.2, 1.0 / 6); }, lat);
  EXPECT_LT((u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).norm(), 1e-12);
}

TEST(TwoStep, ZeroIncrementIsIdentity) {
  std::mt19937 rng(6);
  const TwoCoinField f = random_two_field(rng);
  const Lattice lat(5, 0.2);
  TwoParticleState s = random_two_state(rng, lat);
  const CVec before = s.amplitudes;
  step_two_particle(s, f, 0.3, 0.0);
  EXPECT_LT((s.amplitudes - before).norm(), 1e-13);
}

TEST(TwoStep, SymmetrizedFieldCommutesWithSwap) {
  std::mt19937 rng(7);
  const TwoCoinField f = exchange_symmetrize(random_two_field(rng));
  const Lattice lat(7, 0.1);
  TwoParticleState s = random_two_state(rng, lat);
  TwoParticleState a = s, b = s;
  step_two_particle(a, f, 0.1, 0.1);
  apply_swap(a);
  apply_swap(b);
  step_two_particle(b, f, 0.1, 0.1);
  EXPECT_LT((a.amplitudes - b.amplitudes).norm(), 1e-12);
}

TEST(TwoStep, AntisymmetricStateStaysAntisymmetric) {
  std::mt19937 rng(8);
  const TwoCoinField f = exchange_symmetrize(random_two_field(rng));
  const Lattice lat(7, 0.1);
  TwoParticleState s = random_two_state(rng, lat), sw = s;
  apply_swap(sw);
  s.amplitudes = (s.amplitudes - sw.amplitudes).normalized();
  for (int k = 0; k < 5; ++k) step_two_particle(s, f, 0.1 * k, 0.1);
  TwoParticleState check = s;
  apply_swap(check);
  EXPECT_LT((check.amplitudes + s.amplitudes).norm(), 1e-12);
  check.amplitudes += s.amplitudes;
  EXPECT_LT(check.amplitudes.norm(), 1e-12);
}

TEST(TwoStep, SwapIsInvolution) {
  std::mt19937 rng(9);
  const Lattice lat(4, 0.25);
  TwoParticleState s = random_two_state(rng, lat), t = s;
  apply_swap(t);
  apply_swap(t);
  EXPECT_EQ((s.amplitudes - t.amplitudes).norm(), 0.0);
}

TEST(TwoHamiltonian, SparsityPattern) {
  std::mt19937 rng(10);
  for (int i = 0; i < 5; ++i) {
    const TwoHamiltonianTable h = two_effective_hamiltonian(random_two_field(rng), 0.1, -0.2, 0.3);
    EXPECT_TRUE(h.structural_ok()) << (h.violations.empty() ? "" : h.violations.front());
  }
}

TEST(TwoHamiltonian, PotentialIsSumOfRates) {
  TwoCoinField f;
  const auto v1 = [](double x1, double x2, double) { return 0.3 + x1 - x2; };
  const auto v2 = [](double x1, double x2, double) { return 0.2 * x1 * x2; };
  f.set(1, 0, 0, [](double, double, double) { return 0.0; }, v1);
  f.set(2, 0, 0, [](double, double, double) { return 0.0; }, v2);
  for (auto [x1, x2] : {std::pair{0.1, 0.4}, {-0.3, 0.2}}) {
    const TwoHamiltonianTable h = two_effective_hamiltonian(f, x1, x2, 0.0);
    EXPECT_NEAR(h.xi[0][0].real(), v1(x1, x2, 0) + v2(x1, x2, 0), 1e-8);
    EXPECT_NEAR(h.xi[0][0].imag(), 0.0, 1e-8);
  }
}

TEST(TwoHamiltonian, CoulombProfile) {
  TwoCoinField f;
  const double g = 0.05;
  f.set(1, 0, 0, [](double, double, double) { return 0.0; },
        [g](double x1, double x2, double) { return g / std::abs(x1 - x2); });
  f.set(2, 1, 0, [](double, double, double) { return 0.2; });
  f.set(2, 0, 1, [](double, double, double) { return 0.2; });
  for (double sep : {0.2, 0.4, 0.8}) {
    const TwoHamiltonianTable h = two_effective_hamiltonian(f, 0.0, sep, 0.0);
    EXPECT_TRUE(h.structural_ok());
    EXPECT_NEAR(h.xi[0][0].real(), g / sep, 1e-7) << sep;
  }
}
