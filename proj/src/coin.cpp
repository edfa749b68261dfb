#include "qwalk/coin.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qw {

FG fg_from_angles(const CoinAngles& a) {
  const double r2 = a.t1 * a.t1 + a.t2 * a.t2 + a.t3 * a.t3;
  const double r = std::sqrt(r2);
  double c, sinc;  // cos|theta|, sin|theta|/|theta|
  if (r < 1e-8) {
    c = 1.0 - r2 / 2.0;
    sinc = 1.0 - r2 / 6.0;
  } else {
    c = std::cos(r);
    sinc = std::sin(r) / r;
  }
  return {cplx(c, -a.t3 * sinc), cplx(-a.t2 * sinc, -a.t1 * sinc)};
}

Mat2 u2_from_angles(const CoinAngles& a) {
  const FG fg = fg_from_angles(a);
  Mat2 m;
  m << fg.F, fg.G, -std::conj(fg.G), std::conj(fg.F);
  if (a.t0 != 0.0) m *= std::exp(-kI * a.t0);
  return m;
}

int CoinSchedule::slot(int sub_step, int q) {
  if (sub_step != 1 && sub_step != 2) throw std::out_of_range("sub-step must be 1 or 2");
  if (q < 0 || q > 3) throw std::out_of_range("coin component must be 0..3");
  return (sub_step - 1) * 4 + q;
}

CoinSchedule& CoinSchedule::set(int sub_step, int q, Field base, Field rate) {
  const int s = slot(sub_step, q);
  base_[s] = std::move(base);
  rate_[s] = std::move(rate);
  return *this;
}

CoinSchedule& CoinSchedule::set_base(int sub_step, int q, Field base) {
  base_[slot(sub_step, q)] = std::move(base);
  return *this;
}

CoinSchedule& CoinSchedule::set_rate(int sub_step, int q, Field rate) {
  rate_[slot(sub_step, q)] = std::move(rate);
  return *this;
}

double CoinSchedule::base(int sub_step, int q, double x, double t) const {
  const auto& f = base_[slot(sub_step, q)];
  return f ? f(x, t) : 0.0;
}

double CoinSchedule::rate(int sub_step, int q, double x, double t) const {
  const auto& f = rate_[slot(sub_step, q)];
  return f ? f(x, t) : 0.0;
}

double CoinSchedule::value(int sub_step, int q, double x, double t, double dt) const {
  const int s = slot(sub_step, q);
  double v = base_[s] ? base_[s](x, t) : 0.0;
  if (dt != 0.0 && rate_[s]) v += dt * rate_[s](x, t);
  return v;
}

CoinAngles CoinSchedule::angles(int sub_step, double x, double t, double dt) const {
  return {value(sub_step, 0, x, t, dt), value(sub_step, 1, x, t, dt), value(sub_step, 2, x, t, dt),
          value(sub_step, 3, x, t, dt)};
}

bool CoinSchedule::has_base(int sub_step, int q) const { return static_cast<bool>(base_[slot(sub_step, q)]); }
bool CoinSchedule::has_rate(int sub_step, int q) const { return static_cast<bool>(rate_[slot(sub_step, q)]); }

bool CoinSchedule::in_phase_rotation_family() const {
  for (int j = 1; j <= 2; ++j)
    for (int q = 2; q <= 3; ++q)
      if (has_base(j, q) || has_rate(j, q)) return false;
  return true;
}

CoinSchedule CoinSchedule::homogeneous(const CoinAngles& c1, const CoinAngles& c2) {
  CoinSchedule s;
  const std::array<double, 4> a1{c1.t0, c1.t1, c1.t2, c1.t3};
  const std::array<double, 4> a2{c2.t0, c2.t1, c2.t2, c2.t3};
  for (int q = 0; q < 4; ++q) {
    if (a1[q] != 0.0) s.set_base(1, q, [v = a1[q]](double, double) { return v; });
    if (a2[q] != 0.0) s.set_base(2, q, [v = a2[q]](double, double) { return v; });
  }
  return s;
}

PositionDiagonalCoin coin_field(const CoinSchedule& schedule, int sub_step, double t, double dt,
                                const Lattice& lattice) {
  if (dt < 0.0) throw std::invalid_argument("coin_field: dt must be non-negative");
  PositionDiagonalCoin out(lattice.sites);
  for (int s = 0; s < lattice.sites; ++s)
    out[s] = u2_from_angles(schedule.angles(sub_step, lattice.position(s), t, dt));
  return out;
}

double unitarity_defect(const CMat& u) {
  return (u.adjoint() * u - CMat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

CMat block_direct_sum(const std::vector<Mat2>& blocks) {
  const auto m = static_cast<Eigen::Index>(blocks.size());
  CMat out = CMat::Zero(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (unitarity_defect(blocks[j]) > 1e-12)
      throw std::invalid_argument("block_direct_sum: block " + std::to_string(j) + " is not unitary");
    out.block(2 * j, 2 * j, 2, 2) = blocks[j];
  }
  return out;
}

std::vector<CMat> pauli_generators() {
  std::vector<CMat> g;
  for (int r = 0; r < 4; ++r) g.emplace_back(pauli(r));
  return g;
}

std::vector<CMat> gell_mann_generators() {
  std::vector<CMat> g(9, CMat::Zero(3, 3));
  g[0] = CMat::Identity(3, 3);
  g[1](0, 1) = g[1](1, 0) = 1.0;
  g[2](0, 1) = -kI;
  g[2](1, 0) = kI;
  g[3](0, 0) = 1.0;
  g[3](1, 1) = -1.0;
  g[4](0, 2) = g[4](2, 0) = 1.0;
  g[5](0, 2) = -kI;
  g[5](2, 0) = kI;
  g[6](1, 2) = g[6](2, 1) = 1.0;
  g[7](1, 2) = -kI;
  g[7](2, 1) = kI;
  const double s = 1.0 / std::sqrt(3.0);
  g[8](0, 0) = s;
  g[8](1, 1) = s;
  g[8](2, 2) = -2.0 * s;
  return g;
}

NonabelianCoinSpec make_nonabelian_spec(int n) {
  NonabelianCoinSpec spec;
  spec.n = n;
  if (n == 1) {
    spec.generators = {CMat::Identity(1, 1)};
  } else if (n == 2) {
    spec.generators = pauli_generators();
  } else if (n == 3) {
    spec.generators = gell_mann_generators();
  } else {
    throw std::invalid_argument("default generators exist only for N = 1, 2, 3");
  }
  for (int j = 0; j < 2; ++j) {
    spec.omega[j].resize(spec.generators.size());
    spec.Omega[j].resize(spec.generators.size());
  }
  return spec;
}

void NonabelianCoinSpec::validate() const {
  if (n < 1) throw std::invalid_argument("gauge dimension must be positive");
  if (generators.empty()) throw std::invalid_argument("no generators supplied");
  if ((generators[0] - CMat::Identity(n, n)).cwiseAbs().maxCoeff() != 0.0)
    throw std::invalid_argument("Lambda_0 must be the identity");
  for (std::size_t q = 0; q < generators.size(); ++q) {
    const CMat& g = generators[q];
    if (g.rows() != n || g.cols() != n) throw std::invalid_argument("generator has wrong size");
    if ((g - g.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("generator " + std::to_string(q) + " is not Hermitian");
  }
  for (int j = 0; j < 2; ++j)
    if (omega[j].size() > generators.size() || Omega[j].size() > generators.size())
      throw std::invalid_argument("more coefficient fields than generators");
}

double NonabelianCoinSpec::omega_at(int sub_step, int q, double x, double t) const {
  const auto& v = omega.at(sub_step - 1);
  return (q < static_cast<int>(v.size()) && v[q]) ? v[q](x, t) : 0.0;
}

double NonabelianCoinSpec::Omega_at(int sub_step, int q, double x, double t) const {
  const auto& v = Omega.at(sub_step - 1);
  return (q < static_cast<int>(v.size()) && v[q]) ? v[q](x, t) : 0.0;
}

CMat expm_hermitian(const CMat& h, double scale) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  const auto& ev = es.eigenvalues();
  CVec ph(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) ph[i] = std::exp(-kI * (scale * ev[i]));
  return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

CMat nonabelian_coin(const CoinSchedule& schedule, const NonabelianCoinSpec& spec, int sub_step, double x, double t,
                     double dt) {
  const int n = spec.n;
  const Mat2 spin = u2_from_angles(schedule.angles(sub_step, x, t, dt));
  CMat up = CMat::Identity(n, n);
  CMat down = CMat::Identity(n, n);
  if (dt != 0.0) {
    CMat hu = CMat::Zero(n, n), hd = CMat::Zero(n, n);
    for (std::size_t q = 0; q < spec.generators.size(); ++q) {
      hu += spec.omega_at(sub_step, static_cast<int>(q), x, t) * spec.generators[q];
      hd += spec.Omega_at(sub_step, static_cast<int>(q), x, t) * spec.generators[q];
    }
    up = expm_hermitian(hu, dt);
    down = expm_hermitian(hd, dt);
  }
  CMat gauge = CMat::Zero(2 * n, 2 * n);
  gauge.topLeftCorner(n, n) = up;
  gauge.bottomRightCorner(n, n) = down;
  CMat lift = CMat::Zero(2 * n, 2 * n);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) lift.block(a * n, b * n, n, n) = spin(a, b) * CMat::Identity(n, n);
  return lift * gauge;
}

}  // namespace qw
