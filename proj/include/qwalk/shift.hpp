#pragma once

#include <vector>

#include "qwalk/state.hpp"

namespace qw {

enum class ShiftKind {
  Full,              // up -> x+a, down -> x-a
  HalfPlus,          // up -> x+a, down stays
  HalfMinus,         // up stays, down -> x-a
  SectoredPlus,      // 6-dim: zeta_1,3,5 -> x+a, zeta_2,4,6 stay
  SectoredMinus,     // 6-dim: zeta_1,3,5 stay, zeta_2,4,6 -> x-a
  TwoParticlePlus,   // HalfPlus on each particle
  TwoParticleMinus,  // HalfMinus on each particle
};

// Coin-conditioned cyclic translation. For Full/Half kinds with coin_dim = 2N
// the first N coin indices form the "up" block (spin-major gauge layout).
class Shift {
 public:
  Shift(ShiftKind kind, int coin_dim, const Lattice& lattice);

  void apply(WalkState& state) const;
  void apply_inverse(WalkState& state) const;
  void apply(TwoParticleState& state) const;
  void apply_inverse(TwoParticleState& state) const;

  ShiftKind kind() const { return kind_; }
  // Displacement in sites for a single-particle coin index.
  int displacement(int coin) const { return disp_[coin]; }

 private:
  void run(WalkState& state, int sign) const;
  void run(TwoParticleState& state, int sign) const;

  ShiftKind kind_;
  int coin_dim_;
  Lattice lattice_;
  std::vector<int> disp_;
};

void apply_shift(ShiftKind kind, WalkState& state);
void apply_shift(ShiftKind kind, TwoParticleState& state);

}  // namespace qw
