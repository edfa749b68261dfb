#include "qwalk/curved.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/trapezoidal.hpp>

#include "qwalk/engines.hpp"
#include "qwalk/stencil.hpp"

namespace qw {

namespace {

constexpr double kFieldStep = 1e-6;

struct LocalAngles {
  double a1, a2;          // theta^1_j at dt = 0
  double d01, d02;        // d/dx theta^0_j
  double d11, d12;        // d/dx theta^1_j
  double v0, v1;          // rate^0_1 + rate^0_2, rate^1_1 + rate^1_2
};

double base_gradient(const CoinSchedule& s, int j, int q, double x, double t, double h) {
  if (!s.has_base(j, q)) return 0.0;
  return central_difference([&](double y) { return s.base(j, q, y, t); }, x, h);
}

LocalAngles local_angles(const CoinSchedule& s, double x, double t, double h) {
  LocalAngles l{};
  l.a1 = s.base(1, 1, x, t);
  l.a2 = s.base(2, 1, x, t);
  l.d01 = base_gradient(s, 1, 0, x, t, h);
  l.d02 = base_gradient(s, 2, 0, x, t, h);
  l.d11 = base_gradient(s, 1, 1, x, t, h);
  l.d12 = base_gradient(s, 2, 1, x, t, h);
  l.v0 = s.rate(1, 0, x, t) + s.rate(2, 0, x, t);
  l.v1 = s.rate(1, 1, x, t) + s.rate(2, 1, x, t);
  return l;
}

void require_family(const CoinSchedule& s) {
  if (!s.in_phase_rotation_family())
    throw std::invalid_argument("closed forms cover theta^0/theta^1 schedules only; use the numeric extraction");
}

std::array<cplx, 4> pauli_components(const CMat& m) {
  std::array<cplx, 4> c{};
  for (int r = 0; r < 4; ++r) c[r] = (pauli(r) * m).trace() / 2.0;
  return c;
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double integrate_from_origin(const std::function<double(double)>& f, double x) {
  if (x == 0.0) return 0.0;
  using boost::math::quadrature::trapezoidal;
  return x > 0.0 ? trapezoidal(f, 0.0, x, 1e-12) : -trapezoidal(f, x, 0.0, 1e-12);
}

}  // namespace

double HamiltonianCoefficients::max_difference(const HamiltonianCoefficients& o) const {
  double m = 0.0;
  for (int r = 0; r < 4; ++r) m = std::max({m, std::abs(theta[r] - o.theta[r]), std::abs(xi[r] - o.xi[r])});
  return m;
}

HamiltonianCoefficients closed_form_coefficients(const CoinSchedule& s, double x, double t, double h) {
  require_family(s);
  const LocalAngles l = local_angles(s, x, t, h);
  const double sum1 = 2.0 * l.a1 + l.a2;
  const double sum2 = 2.0 * l.a1 + 2.0 * l.a2;
  HamiltonianCoefficients c;
  c.theta = {0.0, 0.0, std::cos(l.a2) * std::sin(sum1), 0.5 * std::cos(2.0 * l.a1) + 0.5 * std::cos(sum2)};
  c.xi[0] = l.v0 - 0.5 * l.d02;
  c.xi[1] = l.v1 - 0.5 * l.d12;
  c.xi[2] = -kI * std::cos(l.a2) * std::cos(sum1) * l.d11 - 0.5 * kI * std::cos(sum2) * l.d12 -
            l.d01 * std::cos(l.a2) * std::sin(sum1) - 0.5 * l.d02 * std::sin(sum2);
  c.xi[3] = 0.5 * kI * std::sin(sum2) * l.d12 + kI * std::cos(l.a2) * std::sin(sum1) * l.d11 -
            0.5 * l.d01 * (std::cos(2.0 * l.a1) + std::cos(sum2)) - 0.5 * l.d02 * std::cos(sum2);
  return c;
}

double local_gradient_scale(const CoinSchedule& s, double x, double t) {
  double g = 0.0;
  for (int j = 1; j <= 2; ++j)
    for (int q = 0; q < 4; ++q) {
      g = std::max(g, std::abs(base_gradient(s, j, q, x, t, 1e-4)));
      g = std::max(g, std::abs(s.rate(j, q, x, t)));
    }
  return g;
}

HamiltonianCoefficients numeric_coefficients(const CoinSchedule& s, double x, double t, double probe) {
  if (probe <= 0.0) probe = probe_step(local_gradient_scale(s, x, t));
  const ProbeStep step = [&](WalkState& st, double d) { step_modified(st, s, t, d); };
  const LocalGenerator g = richardson_generator(step, 2, x, probe);
  HamiltonianCoefficients c;
  c.xi = pauli_components(g.xi);
  c.theta = pauli_components(g.theta);
  c.residual = g.residual;
  return c;
}

double hermiticity_residual(const CoinSchedule& s, double x, double t, double h) {
  const HamiltonianCoefficients mid = numeric_coefficients(s, x, t);
  std::array<HamiltonianCoefficients, 4> ring;
  const double offsets[4] = {-2.0 * h, -h, h, 2.0 * h};
  for (int i = 0; i < 4; ++i) ring[i] = numeric_coefficients(s, x + offsets[i], t);
  double worst = 0.0;
  for (int r = 0; r < 4; ++r) {
    // fourth-order central difference
    const double d = (ring[0].theta[r].real() - 8.0 * ring[1].theta[r].real() + 8.0 * ring[2].theta[r].real() -
                      ring[3].theta[r].real()) /
                     (12.0 * h);
    worst = std::max(worst, std::abs(mid.xi[r].imag() + 0.5 * d));
  }
  return worst;
}

CoinSchedule schedule_from_metric_1p1(const VielbeinField1p1& f, GaugeConvention convention) {
  auto half_angle = [f](double x, double t) {
    const double ratio = f.e11(x, t) / f.e00(x, t);
    if (std::abs(ratio) > 1.0 + 1e-12)
      throw std::domain_error("|e11/e00| = " + std::to_string(std::abs(ratio)) +
                              " exceeds 1; rescale the vielbein before building a schedule");
    return 0.5 * std::acos(std::clamp(ratio, -1.0, 1.0));
  };
  auto half_angle_gradient = [half_angle](double x, double t) {
    return central_difference([&](double y) { return half_angle(y, t); }, x, kFieldStep);
  };
  auto potential_gradient = [f, half_angle, convention](double x, double t) {
    const double a1 = f.A1(x, t);
    return convention == GaugeConvention::Consistent ? a1 : a1 * std::cos(2.0 * half_angle(x, t));
  };
  CoinSchedule s;
  s.set(1, 1, half_angle, [half_angle_gradient](double x, double t) { return -half_angle_gradient(x, t); });
  s.set(2, 1, [half_angle](double x, double t) { return -2.0 * half_angle(x, t); },
        [f](double x, double t) { return f.mass(x, t) / f.e00(x, t); });
  s.set(1, 0,
        [potential_gradient](double x, double t) {
          return integrate_from_origin([&](double y) { return potential_gradient(y, t); }, x);
        },
        [f](double x, double t) { return -f.A0(x, t); });
  return s;
}

Metric1p1 metric_from_schedule(const CoinSchedule& s, double x, double t, MassMode mode, double mass) {
  const double a1 = s.base(1, 1, x, t);
  const double a2 = s.base(2, 1, x, t);
  if (std::abs(a2 + 2.0 * a1) > 1e-9)
    throw std::invalid_argument("metric identification needs theta^1_2 = -2 theta^1_1");
  Metric1p1 m;
  if (mode == MassMode::Emergent) {
    m.e00 = 1.0;
  } else {
    const double denom = s.rate(1, 1, x, t) + s.rate(2, 1, x, t) + base_gradient(s, 1, 1, x, t, kFieldStep);
    if (std::abs(denom) < 1e-300) throw std::domain_error("mass relation is degenerate: e00 undefined");
    m.e00 = mass / denom;
  }
  m.e11 = m.e00 * std::cos(2.0 * a1);
  m.g << m.e00 * m.e00, 0.0, 0.0, -m.e11 * m.e11;
  return m;
}

GaugeFields1p1 gauge_from_schedule(const CoinSchedule& s, double x, double t, GaugeConvention convention) {
  const LocalAngles l = local_angles(s, x, t, kFieldStep);
  GaugeFields1p1 g;
  g.A0 = -l.v0;
  g.A1 = convention == GaugeConvention::Consistent ? l.d01 : l.d01 / std::cos(2.0 * l.a1);
  g.mass_over_e00 = l.v1 + l.d11;
  return g;
}

Reduction2p1 reduce_2plus1(const CoinSchedule& s, double k_y, double x, double t, MassMode mode, double mass,
                           ReductionSigns signs) {
  require_family(s);
  const LocalAngles l = local_angles(s, x, t, kFieldStep);
  const double sum1 = 2.0 * l.a1 + l.a2;
  const double sum2 = 2.0 * l.a1 + 2.0 * l.a2;
  const double theta2 = std::cos(l.a2) * std::sin(sum1);
  const double theta3 = 0.5 * std::cos(2.0 * l.a1) + 0.5 * std::cos(sum2);
  const double xi0 = l.v0 - 0.5 * l.d02;
  const double xi1 = l.v1 - 0.5 * l.d12;

  Reduction2p1 r;
  r.A0 = -l.v0;
  const double sign = signs == ReductionSigns::Consistent ? 1.0 : -1.0;
  r.A1 = sign * l.d01;
  r.A2 = k_y + sign * l.d02;
  r.q20 = 0.5;
  r.q11 = theta3;
  r.q12 = theta2;
  r.q21 = 0.5 * std::cos(sum2);
  r.q22 = 0.5 * std::sin(sum2);
  if (mode == MassMode::Emergent) {
    r.e00 = 1.0;
    r.mass = xi1;
  } else {
    if (std::abs(xi1) < 1e-300) throw std::domain_error("mass relation is degenerate: e00 undefined");
    r.e00 = mass / xi1;
    r.mass = mass;
  }

  Eigen::Matrix3d e = Eigen::Matrix3d::Zero();  // e(mu, a)
  e(0, 0) = r.e00;
  e(1, 1) = r.e00 * r.q11;
  e(1, 2) = r.e00 * r.q12;
  e(2, 0) = r.e00 * r.q20;
  e(2, 1) = r.e00 * r.q21;
  e(2, 2) = r.e00 * r.q22;
  for (int mu = 0; mu < 3; ++mu)
    for (int nu = 0; nu < 3; ++nu) r.metric(mu, nu) = e(mu, 0) * e(nu, 0) - e(mu, 1) * e(nu, 1) - e(mu, 2) * e(nu, 2);

  const double drive = k_y - r.A2;
  r.residuals[0] = r.q12 - theta2;
  r.residuals[1] = r.q11 - theta3;
  r.residuals[2] = -r.A0 + r.q20 * drive - xi0;
  r.residuals[3] = r.mass / r.e00 - xi1;
  r.residuals[4] = r.q21 * drive - r.q11 * r.A1 - (-l.d01 * theta3 - 0.5 * l.d02 * std::cos(sum2));
  r.residuals[5] = r.q22 * drive - r.q12 * r.A1 - (-l.d01 * theta2 - 0.5 * l.d02 * std::sin(sum2));
  return r;
}

Eigen::Matrix3d reference_metric_2plus1(double theta12, double e00) {
  const double c2 = std::cos(theta12) * std::cos(theta12);
  Eigen::Matrix3d g;
  g << 1.0, 0.0, 0.5, 0.0, -0.25 - 0.5 * c2, -0.5 * c2, 0.5, -0.5 * c2, 0.0;
  return e00 * e00 * g;
}

ChiCoefficients chi_coefficients(const CoinSchedule& s, const NonabelianCoinSpec& spec, double x, double t) {
  spec.validate();
  const FG fg = fg_from_angles(s.angles(1, x, t, 0.0));
  const cplx gf = fg.G * std::conj(fg.F);
  const double contrast = std::norm(fg.F) - std::norm(fg.G);
  const int nq = spec.n * spec.n;
  ChiCoefficients chi;
  for (auto& v : chi) v.assign(nq, 0.0);
  for (int q = 0; q < nq; ++q) {
    const double w1 = spec.omega_at(1, q, x, t), W1 = spec.Omega_at(1, q, x, t);
    const double w2 = spec.omega_at(2, q, x, t), W2 = spec.Omega_at(2, q, x, t);
    chi[0][q] = 0.5 * (w1 + W1 + w2 + W2);
    chi[3][q] = 0.5 * (w1 - W1 + (w2 - W2) * contrast);
    chi[1][q] = gf.real() * (w2 - W2);
    chi[2][q] = -gf.imag() * (w2 - W2);
  }
  return chi;
}

NonabelianComponents numeric_nonabelian_components(const CoinSchedule& s, const NonabelianCoinSpec& spec, double x,
                                                   double t, double probe) {
  spec.validate();
  const int nq = spec.n * spec.n;
  if (probe <= 0.0) {
    double scale = local_gradient_scale(s, x, t);
    for (int j = 1; j <= 2; ++j)
      for (int q = 0; q < nq; ++q)
        scale = std::max({scale, std::abs(spec.omega_at(j, q, x, t)), std::abs(spec.Omega_at(j, q, x, t))});
    probe = probe_step(scale);
  }
  const ProbeStep step = [&](WalkState& st, double d) { step_nonabelian_modified(st, s, spec, t, d); };
  const LocalGenerator g = richardson_generator(step, 2 * spec.n, x, probe);
  std::vector<CMat> basis;
  for (int r = 0; r < 4; ++r)
    for (int q = 0; q < nq; ++q) basis.push_back(kron(pauli(r), spec.generators[q]));
  const CVec cx = decompose(g.xi, basis);
  const CVec ct = decompose(g.theta, basis);
  NonabelianComponents out;
  for (int r = 0; r < 4; ++r) {
    out.xi[r].resize(nq);
    out.theta[r].resize(nq);
    for (int q = 0; q < nq; ++q) {
      out.xi[r][q] = cx[r * nq + q];
      out.theta[r][q] = ct[r * nq + q];
    }
  }
  return out;
}

double identity_deviation(const CoinSchedule& s, double t, double dt, double width) {
  const double spacing = dt > 0.0 ? dt : width / 50.0;
  const int half = static_cast<int>(std::ceil(6.0 * width / spacing));
  const Lattice lat(2 * half + 1, spacing);
  WalkState psi(2, lat);
  const cplx up = 1.0 / std::sqrt(2.0), down = kI / std::sqrt(2.0);
  for (int x = 0; x < lat.sites; ++x) {
    const double pos = lat.position(x);
    const double g = std::exp(-pos * pos / (4.0 * width * width));
    psi.at(0, x) = up * g;
    psi.at(1, x) = down * g;
  }
  psi.amplitudes.normalize();
  WalkState out = psi;
  step_modified(out, s, t, dt);
  return (out.amplitudes - psi.amplitudes).norm();
}

}  // namespace qw
