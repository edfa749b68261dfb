#include "qwalk/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qw {

namespace {

constexpr int kPatch = 9;

}  // namespace

LocalGenerator local_generator(const ProbeStep& step, int d_coin, double x0, double d) {
  if (d <= 0.0) throw std::invalid_argument("probe step must be positive");
  const Lattice lat(kPatch, d, x0);
  const int centre = lat.site_of(x0);
  const int left = lat.wrap(centre - 1), right = lat.wrap(centre + 1);
  CMat m_minus(d_coin, d_coin), m_zero(d_coin, d_coin), m_plus(d_coin, d_coin);
  for (int col = 0; col < d_coin; ++col) {
    const std::pair<int, CMat*> sources[3] = {{left, &m_minus}, {centre, &m_zero}, {right, &m_plus}};
    for (const auto& [site, target] : sources) {
      WalkState s = make_basis_state(col, site, d_coin, lat);
      step(s, d);
      for (int row = 0; row < d_coin; ++row) (*target)(row, col) = s.at(row, centre);
    }
  }
  LocalGenerator g;
  g.xi = kI * (m_minus + m_zero + m_plus - CMat::Identity(d_coin, d_coin)) / d;
  g.theta = m_minus - m_plus;
  return g;
}

LocalGenerator richardson_generator(const ProbeStep& step, int d_coin, double x0, double d) {
  const LocalGenerator coarse = local_generator(step, d_coin, x0, d);
  const LocalGenerator fine = local_generator(step, d_coin, x0, d / 2.0);
  LocalGenerator g;
  g.xi = 2.0 * fine.xi - coarse.xi;
  g.theta = 2.0 * fine.theta - coarse.theta;
  g.residual = std::max((fine.xi - coarse.xi).cwiseAbs().maxCoeff(), (fine.theta - coarse.theta).cwiseAbs().maxCoeff());
  return g;
}

double probe_step(double scale) { return 1e-5 / std::max(1.0, std::abs(scale)); }

CVec decompose(const CMat& m, const std::vector<CMat>& basis) {
  const int n = static_cast<int>(basis.size());
  CMat gram(n, n);
  CVec rhs(n);
  for (int i = 0; i < n; ++i) {
    if (basis[i].rows() != m.rows() || basis[i].cols() != m.cols())
      throw std::invalid_argument("decompose: basis element shape mismatch");
    rhs[i] = (basis[i].adjoint() * m).trace();
    for (int j = 0; j < n; ++j) gram(i, j) = (basis[i].adjoint() * basis[j]).trace();
  }
  return gram.ldlt().solve(rhs);
}

double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace qw
