#pragma once

#include <functional>
#include <vector>

#include "qwalk/state.hpp"
#include "qwalk/types.hpp"

namespace qw {

// One step of a walk whose lattice spacing and time step are both `d`.
using ProbeStep = std::function<void(WalkState& state, double d)>;

// Local generator of U = I - i d (Xi + Theta p) + O(d^2) at one site:
//   Xi    = i (M_- + M_0 + M_+ - I) / d
//   Theta = M_- - M_+
// with M_s the coin block <x0| U |x0 + s d>.
struct LocalGenerator {
  CMat xi;
  CMat theta;
  double residual = 0.0;  // max |E(d/2) - E(d)| of the Richardson pair
};

LocalGenerator local_generator(const ProbeStep& step, int coin_dim, double x0, double d);
// Two-level Richardson: 2 E(d/2) - E(d).
LocalGenerator richardson_generator(const ProbeStep& step, int coin_dim, double x0, double d);

// Probe step small enough for fields varying at rate `scale`.
double probe_step(double scale);

// Coefficients c with m = sum_i c_i basis_i (least squares via the Gram matrix).
CVec decompose(const CMat& m, const std::vector<CMat>& basis);

// Central difference f'(x) with step h.
double central_difference(const std::function<double(double)>& f, double x, double h);

}  // namespace qw
