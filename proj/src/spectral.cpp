#include "qwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fftw3.h>
#include <Eigen/Eigenvalues>

namespace qw {

namespace {

struct SuForm {
  double phase;  // U = e^{-i phase} [[A, B], [-B*, A*]]
  cplx A;
  cplx B;
};

SuForm su_form(const SpectralParams& p, double k) {
  const cplx tk = std::exp(-kI * p.a * k);
  switch (p.family) {
    case WalkFamily::DQW: {
      const FG c = fg_from_angles(p.c1);
      return {p.c1.t0, c.F * tk, c.G * tk};
    }
    case WalkFamily::SSDQW: {
      const FG c1 = fg_from_angles(p.c1);
      const FG c2 = fg_from_angles(p.c2);
      return {p.c1.t0 + p.c2.t0, c2.F * c1.F * tk - c2.G * std::conj(c1.G),
              c2.F * c1.G * tk + c2.G * std::conj(c1.F)};
    }
    case WalkFamily::DCA:
      if (std::abs(p.eta1 * p.eta1 + p.eta2 * p.eta2 - 1.0) > 1e-12)
        throw std::invalid_argument("DCA normalization violated: eta1^2 + eta2^2 must equal 1");
      return {0.0, p.eta1 * tk, -kI * p.eta2};
  }
  throw std::invalid_argument("unknown walk family");
}

Vec2 fix_phase(Vec2 v) {
  for (int i = 0; i < 2; ++i)
    if (std::abs(v[i]) > 1e-12) {
      v *= std::abs(v[i]) / v[i];
      break;
    }
  return v.normalized();
}

}  // namespace

std::vector<double> momentum_grid(const Lattice& lat) {
  const int n = lat.sites;
  std::vector<double> k;
  k.reserve(n);
  for (int m = -(n / 2); m <= (n + 1) / 2 - 1; ++m) k.push_back(2.0 * kPi * m / (n * lat.spacing));
  return k;
}

Mat2 step_block(const SpectralParams& p, double k) {
  const SuForm s = su_form(p, k);
  Mat2 v;
  v << s.A, s.B, -std::conj(s.B), std::conj(s.A);
  return std::exp(-kI * s.phase) * v;
}

CMat lattice_momentum_block(const Engine& engine, double k, const Lattice& lat) {
  const int d = engine_coin_dim(engine);
  const int n = lat.sites;
  CVec wave(n);
  for (int x = 0; x < n; ++x) wave[x] = std::exp(kI * k * lat.position(x)) / std::sqrt(double(n));
  CMat block(d, d);
  for (int col = 0; col < d; ++col) {
    WalkState s(d, lat);
    s.amplitudes.segment(static_cast<long>(col) * n, n) = wave;
    step(s, engine, 0);
    for (int row = 0; row < d; ++row) block(row, col) = wave.dot(s.amplitudes.segment(static_cast<long>(row) * n, n));
  }
  return block;
}

MomentumModeSystem hk_closed_form(const SpectralParams& p, double k) {
  const SuForm s = su_form(p, k);
  MomentumModeSystem m;
  m.k = k;
  m.phase = s.phase;
  const double re_a = std::clamp(s.A.real(), -1.0, 1.0);
  const double e_bar = std::acos(re_a);
  const double sin_e = std::sin(e_bar);
  m.E = e_bar / p.dt;
  // sin(E)/E -> 1 as E -> 0
  const double scale = sin_e < 1e-10 ? 1.0 / p.dt : e_bar / (p.dt * sin_e);
  m.H = -scale * (s.A.imag() * pauli(3) + s.B.real() * pauli(2) + s.B.imag() * pauli(1)) +
        (s.phase / p.dt) * pauli(0);
  const double denom = 2.0 * sin_e * (sin_e + s.A.imag());
  if (sin_e >= 1e-10 && denom > 1e-20) {
    m.phi_plus << kI * s.B, sin_e + s.A.imag();
    m.phi_plus /= std::sqrt(denom);
    m.phi_plus = fix_phase(m.phi_plus);
  } else {
    Eigen::SelfAdjointEigenSolver<Mat2> es(m.H);
    m.phi_plus = fix_phase(es.eigenvectors().col(1));
  }
  m.phi_minus << -std::conj(m.phi_plus[1]), std::conj(m.phi_plus[0]);
  m.phi_minus = fix_phase(m.phi_minus);
  return m;
}

CMat hamiltonian_from_unitary(const CMat& u, double dt) {
  if (u.rows() != u.cols()) throw std::invalid_argument("hamiltonian_from_unitary: matrix not square");
  Eigen::ComplexSchur<CMat> schur(u);
  const CMat& q = schur.matrixU();
  const CMat& t = schur.matrixT();
  CVec logs(u.rows());
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    const double arg = std::arg(t(i, i));
    if (kPi - std::abs(arg) < 1e-9) throw std::domain_error("eigenphase at the branch cut +-pi; logarithm is ambiguous");
    logs[i] = cplx(std::log(std::abs(t(i, i))), arg);
  }
  CMat h = (kI / dt) * (q * logs.asDiagonal() * q.adjoint());
  return (h + h.adjoint()) / 2.0;
}

double quasienergy(const SpectralParams& p, double k) {
  const SuForm s = su_form(p, k);
  return std::acos(std::clamp(s.A.real(), -1.0, 1.0)) / p.dt;
}

double zbw_frequency(double theta, double k, double a, double dt) {
  return std::acos(std::clamp(std::cos(theta) * std::cos(k * a), -1.0, 1.0)) / (kPi * dt);
}

double dominant_frequency(const std::vector<double>& series) {
  const int n = static_cast<int>(series.size());
  if (n < 4) throw std::invalid_argument("dominant_frequency: series too short");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= n;
  std::vector<double> in(n);
  for (int i = 0; i < n; ++i) in[i] = series[i] - mean;
  const int bins = n / 2 + 1;
  fftw_complex* out = fftw_alloc_complex(bins);
  fftw_plan plan = fftw_plan_dft_r2c_1d(n, in.data(), out, FFTW_ESTIMATE);
  fftw_execute(plan);
  int best = 1;
  double best_mag = -1.0;
  for (int i = 1; i < bins; ++i) {
    const double mag = out[i][0] * out[i][0] + out[i][1] * out[i][1];
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(out);
  return static_cast<double>(best) / n;
}

ContinuumReport continuum_deviation(WalkFamily family, double mass, const std::vector<double>& scales,
                                    double k_window, int k_samples) {
  if (scales.size() < 2) throw std::invalid_argument("continuum_deviation: need at least two scales");
  ContinuumReport rep;
  rep.scales = scales;
  Mat2 target_mass = mass * pauli(1);
  for (double L : scales) {
    SpectralParams p;
    p.family = family;
    p.a = p.dt = 1.0 / L;
    const double theta = mass * p.dt;
    if (family == WalkFamily::DQW) p.c1.t1 = theta;
    if (family == WalkFamily::SSDQW) p.c2.t1 = theta;
    if (family == WalkFamily::DCA) {
      p.eta2 = std::sin(theta);
      p.eta1 = std::cos(theta);
    }
    double worst = 0.0;
    for (int i = 0; i < k_samples; ++i) {
      const double k = -k_window + 2.0 * k_window * i / (k_samples - 1);
      const Mat2 diff = hk_closed_form(p, k).H - (k * pauli(3) + target_mass);
      worst = std::max(worst, Eigen::JacobiSVD<Mat2>(diff).singularValues()[0]);
    }
    rep.deviations.push_back(worst);
  }
  rep.ratio = rep.deviations.front() / rep.deviations.back();
  rep.order = std::log(rep.ratio) / std::log(scales.back() / scales.front());
  return rep;
}

}  // namespace qw
