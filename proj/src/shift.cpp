#include "qwalk/shift.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qw {

namespace {

bool is_two_particle(ShiftKind k) { return k == ShiftKind::TwoParticlePlus || k == ShiftKind::TwoParticleMinus; }

// Cyclic translation of [first, first+n) by `by` sites (new[x+by] = old[x]).
template <typename It>
void rotate_slice(It first, int n, int by) {
  by %= n;
  if (by < 0) by += n;
  if (by == 0) return;
  std::rotate(first, first + (n - by), first + n);
}

}  // namespace

Shift::Shift(ShiftKind kind, int coin_dim, const Lattice& lattice)
    : kind_(kind), coin_dim_(coin_dim), lattice_(lattice), disp_(coin_dim, 0) {
  switch (kind) {
    case ShiftKind::Full:
    case ShiftKind::HalfPlus:
    case ShiftKind::HalfMinus:
    case ShiftKind::TwoParticlePlus:
    case ShiftKind::TwoParticleMinus: {
      if (coin_dim < 2 || coin_dim % 2 != 0)
        throw std::invalid_argument("shift: coin dimension must be even (2 or 2N), got " + std::to_string(coin_dim));
      if (is_two_particle(kind) && coin_dim != 2)
        throw std::invalid_argument("two-particle shift acts on 2-dim single-particle coins, got " +
                                    std::to_string(coin_dim));
      const int half = coin_dim / 2;
      const bool plus = kind == ShiftKind::HalfPlus || kind == ShiftKind::TwoParticlePlus;
      const bool minus = kind == ShiftKind::HalfMinus || kind == ShiftKind::TwoParticleMinus;
      for (int c = 0; c < coin_dim; ++c) {
        const bool up = c < half;
        if (kind == ShiftKind::Full) disp_[c] = up ? 1 : -1;
        else if (plus) disp_[c] = up ? 1 : 0;
        else if (minus) disp_[c] = up ? 0 : -1;
      }
      break;
    }
    case ShiftKind::SectoredPlus:
    case ShiftKind::SectoredMinus:
      if (coin_dim != 6) throw std::invalid_argument("sectored shift needs coin dimension 6, got " + std::to_string(coin_dim));
      for (int c = 0; c < 6; ++c) {
        const bool up = c % 2 == 0;
        disp_[c] = kind == ShiftKind::SectoredPlus ? (up ? 1 : 0) : (up ? 0 : -1);
      }
      break;
  }
}

void Shift::run(WalkState& s, int sign) const {
  if (is_two_particle(kind_)) throw std::invalid_argument("two-particle shift applied to a single-particle state");
  if (s.coin_dim != coin_dim_ || !(s.lattice == lattice_))
    throw std::invalid_argument("shift: state space does not match the operator");
  const int n = lattice_.sites;
  for (int c = 0; c < coin_dim_; ++c)
    if (disp_[c] != 0) rotate_slice(s.amplitudes.data() + static_cast<long>(c) * n, n, sign * disp_[c]);
}

void Shift::run(TwoParticleState& s, int sign) const {
  if (!is_two_particle(kind_)) throw std::invalid_argument("single-particle shift applied to a two-particle state");
  if (s.d1 != 2 || s.d2 != 2 || !(s.lattice == lattice_))
    throw std::invalid_argument("shift: two-particle state space does not match the operator");
  const int n = lattice_.sites;
  cplx* base = s.amplitudes.data();
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      const int d1 = sign * disp_[c1];
      const int d2 = sign * disp_[c2];
      cplx* block = base + static_cast<long>(c1 * 2 + c2) * n * n;
      // Second particle: contiguous rows of length n.
      if (d2 != 0)
        for (int x1 = 0; x1 < n; ++x1) rotate_slice(block + static_cast<long>(x1) * n, n, d2);
      // First particle: rotate whole rows.
      if (d1 != 0) {
        std::vector<cplx> copy(block, block + static_cast<long>(n) * n);
        for (int x1 = 0; x1 < n; ++x1) {
          const int dst = lattice_.wrap(x1 + d1);
          std::copy(copy.begin() + static_cast<long>(x1) * n, copy.begin() + static_cast<long>(x1 + 1) * n,
                    block + static_cast<long>(dst) * n);
        }
      }
    }
}

void Shift::apply(WalkState& state) const { run(state, +1); }
void Shift::apply_inverse(WalkState& state) const { run(state, -1); }
void Shift::apply(TwoParticleState& state) const { run(state, +1); }
void Shift::apply_inverse(TwoParticleState& state) const { run(state, -1); }

void apply_shift(ShiftKind kind, WalkState& state) { Shift(kind, state.coin_dim, state.lattice).apply(state); }
void apply_shift(ShiftKind kind, TwoParticleState& state) { Shift(kind, 2, state.lattice).apply(state); }

}  // namespace qw
