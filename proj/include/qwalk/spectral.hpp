#pragma once

#include <vector>

#include "qwalk/coin.hpp"
#include "qwalk/engines.hpp"
#include "qwalk/state.hpp"

namespace qw {

enum class WalkFamily { DQW, SSDQW, DCA };

// Translation-invariant walk parameters. DQW uses `c1` only; DCA uses the
// real hopping/mass pair (eta1, eta2).
struct SpectralParams {
  WalkFamily family = WalkFamily::SSDQW;
  CoinAngles c1;
  CoinAngles c2;
  double eta1 = 1.0;
  double eta2 = 0.0;
  double a = 1.0;
  double dt = 1.0;
};

struct MomentumModeSystem {
  double k = 0.0;
  Mat2 H;
  double E = 0.0;       // >= 0, spectrum of H is phase/dt +- E
  double phase = 0.0;   // global phase angle of the step block
  Vec2 phi_plus;
  Vec2 phi_minus;
};

// k_n = 2 pi n / (N a), n in [-floor(N/2), ceil(N/2) - 1].
std::vector<double> momentum_grid(const Lattice& lattice);

// 2x2 step block U(k) acting on coin amplitudes of a plane wave e^{ikx}.
Mat2 step_block(const SpectralParams& p, double k);

// Step block read off the position-space engine on a periodic lattice.
CMat lattice_momentum_block(const Engine& engine, double k, const Lattice& lattice);

MomentumModeSystem hk_closed_form(const SpectralParams& p, double k);

// H = (i/dt) log U on the principal branch. Throws std::domain_error when
// an eigenphase sits within 1e-9 of +-pi.
CMat hamiltonian_from_unitary(const CMat& u, double dt);

double quasienergy(const SpectralParams& p, double k);

// E(k)/pi for the split-step family with theta^1_2 = theta, theta^1_1 = 0.
double zbw_frequency(double theta, double k, double a, double dt);

// Frequency of the largest non-DC FFT bin, in cycles per sample.
double dominant_frequency(const std::vector<double>& series);

struct ContinuumReport {
  std::vector<double> scales;      // L values
  std::vector<double> deviations;  // max_k ||H_k - (k s3 + m s1)||
  double ratio = 0.0;              // first / last deviation
  double order = 0.0;              // fitted power of dt
};

// Uses a = dt = 1/L and sets the mass angle to m*dt (theta^1 for DQW,
// theta^1_2 for SSDQW, eta2 = sin(m dt) for DCA).
ContinuumReport continuum_deviation(WalkFamily family, double mass, const std::vector<double>& scales,
                                    double k_window, int k_samples = 201);

}  // namespace qw
