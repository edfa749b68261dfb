#include "qwalk/observables.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qw {

std::vector<double> position_probability(const WalkState& s) {
  const int n = s.lattice.sites;
  std::vector<double> p(n, 0.0);
  for (int c = 0; c < s.coin_dim; ++c)
    for (int x = 0; x < n; ++x) p[x] += std::norm(s.at(c, x));
  return p;
}

std::vector<double> marginal_probability(const TwoParticleState& s, int particle) {
  if (particle != 1 && particle != 2) throw std::invalid_argument("particle must be 1 or 2");
  const int n = s.lattice.sites;
  std::vector<double> p(n, 0.0);
  for (int c1 = 0; c1 < s.d1; ++c1)
    for (int c2 = 0; c2 < s.d2; ++c2)
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2) p[particle == 1 ? x1 : x2] += std::norm(s.at(c1, c2, x1, x2));
  return p;
}

CMat reduced_coin_state(const WalkState& s) {
  const int n = s.lattice.sites;
  const int d = s.coin_dim;
  // Rows of the d x N amplitude matrix are coin components.
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> psi(s.amplitudes.data(), d, n);
  CMat rho = psi * psi.adjoint();
  return rho;
}

double von_neumann_entropy(const CMat& rho) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    if (l <= 0.0) continue;
    s -= l * std::log(l);
  }
  return s;
}

double entanglement_entropy(const WalkState& state) { return von_neumann_entropy(reduced_coin_state(state)); }

double negativity(const WalkState& state) {
  Eigen::SelfAdjointEigenSolver<CMat> es(reduced_coin_state(state), Eigen::EigenvaluesOnly);
  double sum_sqrt = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) sum_sqrt += std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  return (sum_sqrt * sum_sqrt - 1.0) / 2.0;
}

double negativity(const CMat& rho, int dim_a, int dim_b) {
  const long dim = static_cast<long>(dim_a) * dim_b;
  if (rho.rows() != dim || rho.cols() != dim) throw std::invalid_argument("negativity: density matrix size mismatch");
  if (dim > (1L << 14)) throw std::invalid_argument("negativity: dimension too large for dense partial transpose");
  CMat pt(dim, dim);
  for (int a = 0; a < dim_a; ++a)
    for (int b = 0; b < dim_b; ++b)
      for (int a2 = 0; a2 < dim_a; ++a2)
        for (int b2 = 0; b2 < dim_b; ++b2) pt(a2 * dim_b + b, a * dim_b + b2) = rho(a * dim_b + b, a2 * dim_b + b2);
  Eigen::SelfAdjointEigenSolver<CMat> es(pt, Eigen::EigenvaluesOnly);
  return (es.eigenvalues().cwiseAbs().sum() - 1.0) / 2.0;
}

double coin_expectation(const WalkState& state, const CMat& observable) {
  if (observable.rows() != state.coin_dim) throw std::invalid_argument("observable dimension mismatch");
  const CMat rho = reduced_coin_state(state);
  return (observable * rho).trace().real();
}

double average_late_entropy(const std::vector<double>& series, int window) {
  if (window <= 0 || window > static_cast<int>(series.size()))
    throw std::invalid_argument("average window must be in [1, series length]");
  return std::accumulate(series.end() - window, series.end(), 0.0) / window;
}

CVec bloch_coin(double omega_a, double omega_p) {
  CVec c(2);
  c << std::cos(omega_p / 2.0), std::exp(kI * omega_a) * std::sin(omega_p / 2.0);
  return c;
}

double probability_below(const WalkState& state, double bound) {
  const auto p = position_probability(state);
  double s = 0.0;
  for (int x = 0; x < state.lattice.sites; ++x)
    if (state.lattice.position(x) < bound) s += p[x];
  return s;
}

}  // namespace qw
