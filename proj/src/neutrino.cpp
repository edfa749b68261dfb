#include "qwalk/neutrino.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fftw3.h>
#include <spdlog/spdlog.h>

#include "qwalk/engines.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/spectral.hpp"

namespace qw {

namespace {

// phase (E_j - E_l) t per eV^2 km/GeV: dm2 L / (2E) in natural units.
constexpr double kPhasePerUnit = 2.534;
constexpr double kMaxAngle = 0.3;

SpectralParams sector_params(double theta) {
  SpectralParams p;
  p.family = WalkFamily::SSDQW;
  p.c2.t1 = theta;
  p.a = 1.0;
  p.dt = 1.0;
  return p;
}

Mat3 rotation(int i, int j, double angle, cplx phase = 1.0) {
  Mat3 r = Mat3::Identity();
  const double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = s * std::conj(phase);
  r(j, i) = -s * phase;
  return r;
}

std::array<double, 3> splittings(const MassSpectrum& m) { return {0.0, m.dm21, m.dm31}; }

}  // namespace

PmnsParams PmnsParams::global_fit() {
  const double deg = kPi / 180.0;
  PmnsParams p;
  p.theta12 = 33.48 * deg;
  p.theta13 = 8.50 * deg;
  p.theta23 = 42.3 * deg;
  return p;
}

Mat3 pmns_matrix(const PmnsParams& p) {
  Mat3 majorana = Mat3::Identity();
  majorana(0, 0) = std::exp(kI * p.alpha1 / 2.0);
  majorana(1, 1) = std::exp(kI * p.alpha2 / 2.0);
  return rotation(1, 2, p.theta23) * rotation(0, 2, p.theta13, std::exp(kI * p.delta)) * rotation(0, 1, p.theta12) *
         majorana;
}

void MassSpectrum::validate() const {
  if (energy <= 0.0) throw std::invalid_argument("mass spectrum: energy must be positive");
  if (std::abs(dm32 - (dm31 - dm21)) > 1e-6 * std::abs(dm32))
    throw std::invalid_argument("mass spectrum: dm32 != dm31 - dm21 within 1e-6 relative");
}

bool WalkCalibration::ultra_relativistic(bool warn) const {
  const double worst = *std::max_element(theta.begin(), theta.end());
  const bool ok = k_tilde >= 10.0 * worst;
  if (!ok && warn)
    spdlog::warn("k a = {} is not >> max mass angle {}; ultra-relativistic expansion is inaccurate", k_tilde, worst);
  return ok;
}

double analytic_transition_probability(Flavor from, Flavor to, const Mat3& u, const std::array<double, 3>& phases) {
  const int a = static_cast<int>(from), b = static_cast<int>(to);
  if (u.imag().cwiseAbs().maxCoeff() == 0.0) {
    const Eigen::Matrix3d r = u.real();
    double p = 0.0;
    for (int j = 0; j < 3; ++j) p += std::pow(r(a, j) * r(b, j), 2);
    for (int j = 0; j < 3; ++j)
      for (int l = 0; l < j; ++l) p += 2.0 * r(a, j) * r(a, l) * r(b, j) * r(b, l) * std::cos(phases[j] - phases[l]);
    return p;
  }
  cplx amp = 0.0;
  for (int j = 0; j < 3; ++j) amp += std::conj(u(a, j)) * std::exp(-kI * phases[j]) * u(b, j);
  return std::norm(amp);
}

double analytic_transition_probability(Flavor from, Flavor to, const Mat3& u, const MassSpectrum& m,
                                       double l_over_e) {
  m.validate();
  const auto dm = splittings(m);
  std::array<double, 3> phases{};
  for (int j = 0; j < 3; ++j) phases[j] = kPhasePerUnit * dm[j] * l_over_e;
  return analytic_transition_probability(from, to, u, phases);
}

double sector_quasienergy(int j, const WalkCalibration& c) {
  return quasienergy(sector_params(c.theta.at(j)), c.k_tilde);
}

CVec mass_eigenstate(int j, double k, const WalkCalibration& c) {
  if (j < 0 || j > 2) throw std::out_of_range("mass eigenstate index must be 0, 1 or 2");
  const MomentumModeSystem m = hk_closed_form(sector_params(c.theta[j]), k);
  CVec v = CVec::Zero(6);
  v[2 * j] = m.phi_plus[0];
  v[2 * j + 1] = m.phi_plus[1];
  return v;
}

CVec flavor_coin_state(Flavor alpha, double k, const Mat3& u, const WalkCalibration& c) {
  const int a = static_cast<int>(alpha);
  CVec v = CVec::Zero(6);
  for (int j = 0; j < 3; ++j) v += std::conj(u(a, j)) * mass_eigenstate(j, k, c);
  return v;
}

CMat neutrino_block(double k, const WalkCalibration& c) {
  CMat b = CMat::Zero(6, 6);
  for (int j = 0; j < 3; ++j) b.block<2, 2>(2 * j, 2 * j) = step_block(sector_params(c.theta[j]), k);
  return b;
}

std::vector<FlavorRow> walk_probability_series(Flavor from, int n_steps, const WalkCalibration& c, const Mat3& u) {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be non-negative");
  const CMat block = neutrino_block(c.k_tilde, c);
  std::array<CVec, 3> flavors;
  for (int b = 0; b < 3; ++b) flavors[b] = flavor_coin_state(static_cast<Flavor>(b), c.k_tilde, u, c);
  CVec psi = flavors[static_cast<int>(from)];
  std::vector<FlavorRow> out;
  out.reserve(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    FlavorRow row{};
    for (int b = 0; b < 3; ++b) row[b] = std::norm(flavors[b].dot(psi));
    out.push_back(row);
    psi = block * psi;
  }
  return out;
}

std::vector<FlavorRow> analytic_probability_series(Flavor from, int n_steps, const WalkCalibration& c,
                                                   const Mat3& u) {
  std::array<double, 3> energy{};
  for (int j = 0; j < 3; ++j) energy[j] = sector_quasienergy(j, c);
  std::vector<FlavorRow> out;
  out.reserve(n_steps + 1);
  for (int n = 0; n <= n_steps; ++n) {
    std::array<double, 3> phases{};
    for (int j = 0; j < 3; ++j) phases[j] = energy[j] * n;
    FlavorRow row{};
    for (int b = 0; b < 3; ++b) row[b] = analytic_transition_probability(from, static_cast<Flavor>(b), u, phases);
    out.push_back(row);
  }
  return out;
}

double walk_transition_probability(Flavor from, Flavor to, int n_steps, const WalkCalibration& c, const Mat3& u) {
  return walk_probability_series(from, n_steps, c, u).back()[static_cast<int>(to)];
}

long minimal_feasible_steps(const MassSpectrum& m, double l_over_e, double k_tilde, double theta1) {
  m.validate();
  const double largest = std::max(m.dm21, m.dm31);
  const double need = 2.0 * k_tilde * kPhasePerUnit * largest * l_over_e;
  return static_cast<long>(std::floor(need / (kMaxAngle * kMaxAngle - theta1 * theta1))) + 1;
}

WalkCalibration map_experiment_to_walk(const MassSpectrum& m, int target_steps, double l_over_e, double k_tilde,
                                       double theta1) {
  if (target_steps < 1) throw std::invalid_argument("target_steps must be >= 1");
  if (l_over_e <= 0.0) throw std::invalid_argument("L/E must be positive");
  m.validate();
  const auto dm = splittings(m);
  WalkCalibration c;
  c.k_tilde = k_tilde;
  for (int j = 0; j < 3; ++j) {
    const double sq = theta1 * theta1 + 2.0 * k_tilde * kPhasePerUnit * dm[j] * l_over_e / target_steps;
    c.theta[j] = std::sqrt(sq);
    if (c.theta[j] >= kMaxAngle)
      throw std::domain_error("mass angle " + std::to_string(c.theta[j]) + " rad exceeds the small-angle bound 0.3; " +
                              "minimal feasible step count is " +
                              std::to_string(minimal_feasible_steps(m, l_over_e, k_tilde, theta1)));
  }
  c.steps_short = target_steps;
  c.steps_long = 10 * target_steps;
  c.ultra_relativistic();
  return c;
}

PhysicalStepCount physical_step_count(double length_km, double dt_seconds) {
  constexpr double c_light = 2.99792458e8;
  PhysicalStepCount r;
  r.steps = length_km * 1e3 / (c_light * dt_seconds);
  r.feasible = r.steps <= 1e9;
  return r;
}

WalkState gaussian_flavor_state(Flavor alpha, double k0, double width, double eps, const Mat3& u,
                                const WalkCalibration& c, const Lattice& lat) {
  if (eps <= 0.0) throw std::invalid_argument("momentum window eps must be positive");
  const int n = lat.sites;
  const double a = lat.spacing;
  std::vector<double> ks;
  for (double k : momentum_grid(lat))
    if (std::abs(k - k0) <= eps / a) ks.push_back(k);
  if (ks.empty()) throw std::invalid_argument("momentum window contains no grid momenta");
  WalkState s(6, lat);
  CVec wave(n);
  for (double k : ks) {
    const double weight = std::exp(-width * (k - k0) * (k - k0) / 2.0);
    const CVec coin = flavor_coin_state(alpha, k * a, u, c);
    for (int x = 0; x < n; ++x) wave[x] = std::exp(kI * k * lat.position(x));
    for (int cidx = 0; cidx < 6; ++cidx)
      s.amplitudes.segment(static_cast<long>(cidx) * n, n) += weight * coin[cidx] * wave;
  }
  s.amplitudes.normalize();
  return s;
}

std::vector<double> oscillation_entropy_series(WalkState state, const WalkCalibration& c, int n_steps) {
  if (state.coin_dim != 6) throw std::invalid_argument("oscillation entropy needs a 6-dim coin state");
  std::vector<double> out;
  out.reserve(n_steps + 1);
  out.push_back(entanglement_entropy(state));
  for (int i = 0; i < n_steps; ++i) {
    step_neutrino(state, c.theta);
    out.push_back(entanglement_entropy(state));
  }
  return out;
}

FlavorRow wavepacket_flavor_probabilities(const WalkState& state, const Mat3& u, const WalkCalibration& c) {
  if (state.coin_dim != 6) throw std::invalid_argument("flavor probabilities need a 6-dim coin state");
  const int n = state.lattice.sites;
  const double a = state.lattice.spacing;
  std::array<CVec, 6> modes;
  fftw_complex* buf = fftw_alloc_complex(n);
  fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  for (int cidx = 0; cidx < 6; ++cidx) {
    for (int x = 0; x < n; ++x) {
      const cplx v = state.at(cidx, x);
      buf[x][0] = v.real();
      buf[x][1] = v.imag();
    }
    fftw_execute(plan);
    modes[cidx].resize(n);
    for (int m = 0; m < n; ++m) modes[cidx][m] = cplx(buf[m][0], buf[m][1]) / std::sqrt(double(n));
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
  FlavorRow p{};
  const auto grid = momentum_grid(state.lattice);
  for (int i = 0; i < n; ++i) {
    const int m = static_cast<int>(std::lround(grid[i] * n * a / (2.0 * kPi)));
    const int idx = ((m % n) + n) % n;
    CVec psi(6);
    for (int cidx = 0; cidx < 6; ++cidx) psi[cidx] = modes[cidx][idx];
    if (psi.squaredNorm() < 1e-30) continue;
    for (int b = 0; b < 3; ++b) p[b] += std::norm(flavor_coin_state(static_cast<Flavor>(b), grid[i] * a, u, c).dot(psi));
  }
  return p;
}

std::array<const char*, 6> three_qubit_labels() { return {"000", "001", "010", "011", "100", "101"}; }
std::array<const char*, 6> qubit_qutrit_labels() { return {"00", "01", "02", "10", "11", "12"}; }

}  // namespace qw
