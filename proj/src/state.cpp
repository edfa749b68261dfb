#include "qwalk/state.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qw {

Mat2 pauli(int r) {
  Mat2 m;
  switch (r) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    case 3: m << 1, 0, 0, -1; break;
    default: throw std::out_of_range("pauli index must be 0..3, got " + std::to_string(r));
  }
  return m;
}

Lattice::Lattice(int n, double a, double origin_) : sites(n), spacing(a), origin(origin_) {
  if (n < 2) throw std::invalid_argument("lattice needs at least 2 sites, got " + std::to_string(n));
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("lattice spacing must be positive and finite");
}

int Lattice::wrap(long site) const {
  long r = site % sites;
  if (r < 0) r += sites;
  return static_cast<int>(r);
}

int Lattice::signed_index(int site) const {
  const int upper = (sites + 1) / 2;  // ceil(N/2)
  return site < upper ? site : site - sites;
}

double Lattice::position(int site) const { return origin + signed_index(site) * spacing; }

int Lattice::site_of(double x) const {
  return wrap(std::lround((x - origin) / spacing));
}

WalkState::WalkState(int d, const Lattice& lat) : coin_dim(d), lattice(lat) {
  if (d < 1) throw std::invalid_argument("coin dimension must be positive");
  amplitudes = CVec::Zero(static_cast<Eigen::Index>(d) * lat.sites);
}

TwoParticleState::TwoParticleState(int dim1, int dim2, const Lattice& lat) : d1(dim1), d2(dim2), lattice(lat) {
  if (dim1 < 1 || dim2 < 1) throw std::invalid_argument("coin dimensions must be positive");
  amplitudes = CVec::Zero(static_cast<Eigen::Index>(dim1) * dim2 * lat.sites * lat.sites);
}

WalkState make_basis_state(int coin_index, int site, int coin_dim, const Lattice& lattice) {
  if (coin_dim < 1) throw std::invalid_argument("coin dimension must be positive");
  if (coin_index < 0 || coin_index >= coin_dim)
    throw std::out_of_range("coin index " + std::to_string(coin_index) + " outside [0, " +
                            std::to_string(coin_dim) + ")");
  if (site < 0 || site >= lattice.sites)
    throw std::out_of_range("site " + std::to_string(site) + " outside [0, " + std::to_string(lattice.sites) + ")");
  WalkState s(coin_dim, lattice);
  s.at(coin_index, site) = 1.0;
  return s;
}

WalkState superpose(const std::vector<std::pair<cplx, WalkState>>& terms) {
  if (terms.empty()) throw std::invalid_argument("superpose needs at least one term");
  const WalkState& ref = terms.front().second;
  WalkState out(ref.coin_dim, ref.lattice);
  for (const auto& [w, s] : terms) {
    if (s.coin_dim != ref.coin_dim || !(s.lattice == ref.lattice))
      throw std::invalid_argument("superpose: terms live in different spaces");
    out.amplitudes += w * s.amplitudes;
  }
  const double n = out.amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("superpose: resulting vector is zero");
  out.amplitudes /= n;
  return out;
}

double norm(const WalkState& state) { return state.amplitudes.norm(); }
double norm(const TwoParticleState& state) { return state.amplitudes.norm(); }

WalkState product_state(const CVec& coin, const std::vector<std::pair<int, cplx>>& sites, const Lattice& lattice) {
  WalkState s(static_cast<int>(coin.size()), lattice);
  for (const auto& [site, w] : sites) {
    const int x = lattice.wrap(site);
    for (int c = 0; c < s.coin_dim; ++c) s.at(c, x) += w * coin[c];
  }
  const double n = s.amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("product_state: zero vector");
  s.amplitudes /= n;
  return s;
}

TwoParticleState make_two_particle_basis(int c1, int c2, int x1, int x2, int d1, int d2, const Lattice& lattice) {
  if (c1 < 0 || c1 >= d1 || c2 < 0 || c2 >= d2) throw std::out_of_range("two-particle coin index out of range");
  if (x1 < 0 || x1 >= lattice.sites || x2 < 0 || x2 >= lattice.sites)
    throw std::out_of_range("two-particle site out of range");
  TwoParticleState s(d1, d2, lattice);
  s.at(c1, c2, x1, x2) = 1.0;
  return s;
}

TwoParticleState tensor_product(const WalkState& first, const WalkState& second) {
  if (!(first.lattice == second.lattice)) throw std::invalid_argument("tensor_product: lattices differ");
  TwoParticleState s(first.coin_dim, second.coin_dim, first.lattice);
  const int n = first.lattice.sites;
  for (int c1 = 0; c1 < first.coin_dim; ++c1)
    for (int c2 = 0; c2 < second.coin_dim; ++c2)
      for (int x1 = 0; x1 < n; ++x1) {
        const cplx a = first.at(c1, x1);
        if (a == 0.0) continue;
        for (int x2 = 0; x2 < n; ++x2) s.at(c1, c2, x1, x2) = a * second.at(c2, x2);
      }
  return s;
}

}  // namespace qw
