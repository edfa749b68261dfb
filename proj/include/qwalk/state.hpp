#pragma once

#include <utility>
#include <vector>

#include "qwalk/types.hpp"

namespace qw {

// Periodic 1-D lattice. Sites are stored 0..N-1; the physical position of a
// site uses the centred representative n in [-floor(N/2), ceil(N/2)-1], so
// negative coordinates live in the upper half of the storage range.
struct Lattice {
  int sites = 2;
  double spacing = 1.0;
  double origin = 0.0;

  Lattice() = default;
  Lattice(int n, double a, double origin = 0.0);

  int wrap(long site) const;
  int signed_index(int site) const;
  double position(int site) const;
  // Storage site nearest to physical position x.
  int site_of(double x) const;

  bool operator==(const Lattice& o) const {
    return sites == o.sites && spacing == o.spacing && origin == o.origin;
  }
};

struct WalkState {
  int coin_dim = 2;
  Lattice lattice;
  CVec amplitudes;  // index = coin * N + site

  WalkState() = default;
  WalkState(int d, const Lattice& lat);

  int size() const { return static_cast<int>(amplitudes.size()); }
  int index(int coin, int site) const { return coin * lattice.sites + site; }
  std::pair<int, int> decode(int idx) const { return {idx / lattice.sites, idx % lattice.sites}; }
  cplx& at(int coin, int site) { return amplitudes[index(coin, site)]; }
  cplx at(int coin, int site) const { return amplitudes[index(coin, site)]; }
};

struct TwoParticleState {
  int d1 = 2;
  int d2 = 2;
  Lattice lattice;
  CVec amplitudes;  // index = ((c1*d2 + c2)*N + x1)*N + x2

  TwoParticleState() = default;
  TwoParticleState(int dim1, int dim2, const Lattice& lat);

  int index(int c1, int c2, int x1, int x2) const {
    const int n = lattice.sites;
    return ((c1 * d2 + c2) * n + x1) * n + x2;
  }
  cplx& at(int c1, int c2, int x1, int x2) { return amplitudes[index(c1, c2, x1, x2)]; }
  cplx at(int c1, int c2, int x1, int x2) const { return amplitudes[index(c1, c2, x1, x2)]; }
};

WalkState make_basis_state(int coin_index, int site, int coin_dim, const Lattice& lattice);
WalkState superpose(const std::vector<std::pair<cplx, WalkState>>& terms);
double norm(const WalkState& state);
double norm(const TwoParticleState& state);

// Product coin (x) position state: sum over sites of weight * coin vector.
WalkState product_state(const CVec& coin, const std::vector<std::pair<int, cplx>>& sites,
                        const Lattice& lattice);

TwoParticleState make_two_particle_basis(int c1, int c2, int x1, int x2, int d1, int d2,
                                         const Lattice& lattice);
TwoParticleState tensor_product(const WalkState& first, const WalkState& second);

}  // namespace qw
