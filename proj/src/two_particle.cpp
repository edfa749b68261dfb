#include "qwalk/two_particle.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "qwalk/shift.hpp"

namespace qw {

namespace {

constexpr int kPatch = 9;

Mat4 kron4(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

std::array<std::array<double, 2>, 2> exponent(const TwoCoinField& f, int j, double x1, double x2, double t,
                                              double dt) {
  std::array<std::array<double, 2>, 2> th{};
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r) th[q][r] = f.value(j, q, r, x1, x2, t, dt);
  return th;
}

void apply_two_coin(TwoParticleState& s, const TwoCoinField& f, int j, double t, double dt, bool adjoint) {
  const Lattice& lat = s.lattice;
  const int n = lat.sites;
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = 0; x2 < n; ++x2) {
      Mat4 c = two_coin(f, j, lat.position(x1), lat.position(x2), t, dt);
      if (adjoint) c.adjointInPlace();
      Eigen::Vector4cd v;
      for (int k = 0; k < 4; ++k) v[k] = s.at(k / 2, k % 2, x1, x2);
      v = c * v;
      for (int k = 0; k < 4; ++k) s.at(k / 2, k % 2, x1, x2) = v[k];
    }
}

bool allowed(int kind, int q, int r) {
  // kind 0: p1 coefficients, 1: p2 coefficients, 2: position-diagonal part
  const bool first_moves = (q == 2 || q == 3) && r < 2;
  const bool second_moves = (r == 2 || r == 3) && q < 2;
  if (kind == 0) return first_moves;
  if (kind == 1) return second_moves;
  return first_moves || second_moves || (q < 2 && r < 2);
}

}  // namespace

int TwoCoinField::slot(int j, int q, int r) {
  if (j < 1 || j > 2) throw std::out_of_range("two-particle sub-step must be 1 or 2");
  if (q < 0 || q > 1 || r < 0 || r > 1)
    throw std::invalid_argument("two-particle coins support theta^{qr} with q, r in {0,1} only");
  return (j - 1) * 4 + q * 2 + r;
}

TwoCoinField& TwoCoinField::set(int j, int q, int r, TwoField base, TwoField rate) {
  const int k = slot(j, q, r);
  base_[k] = std::move(base);
  rate_[k] = std::move(rate);
  return *this;
}

double TwoCoinField::base(int j, int q, int r, double x1, double x2, double t) const {
  const auto& f = base_[slot(j, q, r)];
  return f ? f(x1, x2, t) : 0.0;
}

double TwoCoinField::rate(int j, int q, int r, double x1, double x2, double t) const {
  const auto& f = rate_[slot(j, q, r)];
  return f ? f(x1, x2, t) : 0.0;
}

double TwoCoinField::value(int j, int q, int r, double x1, double x2, double t, double dt) const {
  const double b = base(j, q, r, x1, x2, t);
  return dt == 0.0 ? b : b + dt * rate(j, q, r, x1, x2, t);
}

bool TwoCoinField::has(int j, int q, int r) const {
  const int k = slot(j, q, r);
  return static_cast<bool>(base_[k]) || static_cast<bool>(rate_[k]);
}

const std::array<Eigen::Vector4cd, 4>& two_coin_eigenvectors() {
  static const std::array<Eigen::Vector4cd, 4> v = [] {
    std::array<Eigen::Vector4cd, 4> out;
    out[0] << 0.5, 0.5, 0.5, 0.5;
    out[1] << -0.5, -0.5, 0.5, 0.5;
    out[2] << -0.5, 0.5, -0.5, 0.5;
    out[3] << 0.5, -0.5, -0.5, 0.5;
    return out;
  }();
  return v;
}

std::array<double, 4> two_coin_eigenvalues(const std::array<std::array<double, 2>, 2>& th) {
  return {th[0][0] + th[0][1] + th[1][0] + th[1][1], th[0][0] + th[0][1] - th[1][0] - th[1][1],
          th[0][0] - th[0][1] + th[1][0] - th[1][1], th[0][0] - th[0][1] - th[1][0] + th[1][1]};
}

Mat4 two_coin(const TwoCoinField& f, int j, double x1, double x2, double t, double dt) {
  const auto lambda = two_coin_eigenvalues(exponent(f, j, x1, x2, t, dt));
  const auto& psi = two_coin_eigenvectors();
  Mat4 c = Mat4::Zero();
  for (int q = 0; q < 4; ++q) c += std::exp(-kI * lambda[q]) * psi[q] * psi[q].adjoint();
  return c;
}

Mat4 two_coin_exponential(const TwoCoinField& f, int j, double x1, double x2, double t, double dt) {
  const auto th = exponent(f, j, x1, x2, t, dt);
  Mat4 gen = Mat4::Zero();
  for (int q = 0; q < 2; ++q)
    for (int r = 0; r < 2; ++r) gen += th[q][r] * kron4(pauli(q), pauli(r));
  return Mat4((-kI * gen).exp());
}

TwoCoinField separable_field(const CoinSchedule& first, const CoinSchedule& second) {
  if (!first.in_phase_rotation_family() || !second.in_phase_rotation_family())
    throw std::invalid_argument("separable_field: schedules must use theta^0 and theta^1 only");
  TwoCoinField f;
  for (int j = 1; j <= 2; ++j) {
    f.set(j, 0, 0, [first, second, j](double x1, double x2, double t) {
      return first.base(j, 0, x1, t) + second.base(j, 0, x2, t);
    }, [first, second, j](double x1, double x2, double t) {
      return first.rate(j, 0, x1, t) + second.rate(j, 0, x2, t);
    });
    f.set(j, 1, 0, [first, j](double x1, double, double t) { return first.base(j, 1, x1, t); },
          [first, j](double x1, double, double t) { return first.rate(j, 1, x1, t); });
    f.set(j, 0, 1, [second, j](double, double x2, double t) { return second.base(j, 1, x2, t); },
          [second, j](double, double x2, double t) { return second.rate(j, 1, x2, t); });
  }
  return f;
}

SeparableFactors is_separable_form(const TwoCoinField& f, const Lattice& lat, const std::vector<double>& times,
                                   double tol) {
  SeparableFactors out;
  const double ref = 0.0;  // reference coordinate for splitting theta^{00}
  auto sample = [&](int j, int q, int r, bool use_rate, double x1, double x2, double t) {
    return use_rate ? f.rate(j, q, r, x1, x2, t) : f.base(j, q, r, x1, x2, t);
  };
  double defect = 0.0;
  for (double t : times)
    for (int j = 1; j <= 2; ++j)
      for (bool use_rate : {false, true})
        for (int s1 = 0; s1 < lat.sites; ++s1)
          for (int s2 = 0; s2 < lat.sites; ++s2) {
            const double x1 = lat.position(s1), x2 = lat.position(s2);
            defect = std::max(defect, std::abs(sample(j, 1, 1, use_rate, x1, x2, t)));
            defect = std::max(defect, std::abs(sample(j, 1, 0, use_rate, x1, x2, t) -
                                               sample(j, 1, 0, use_rate, x1, ref, t)));
            defect = std::max(defect, std::abs(sample(j, 0, 1, use_rate, x1, x2, t) -
                                               sample(j, 0, 1, use_rate, ref, x2, t)));
            const double mixed = sample(j, 0, 0, use_rate, x1, x2, t) - sample(j, 0, 0, use_rate, x1, ref, t) -
                                 sample(j, 0, 0, use_rate, ref, x2, t) + sample(j, 0, 0, use_rate, ref, ref, t);
            defect = std::max(defect, std::abs(mixed));
          }
  out.max_defect = defect;
  out.separable = defect <= tol;
  if (!out.separable) return out;
  for (int j = 1; j <= 2; ++j) {
    // theta^{00}(x1,x2) = [theta^{00}(x1,0) - c/2] + [theta^{00}(0,x2) - c/2]
    out.first.set(j, 0, [f, j](double x, double t) { return f.base(j, 0, 0, x, 0.0, t) - 0.5 * f.base(j, 0, 0, 0.0, 0.0, t); },
                  [f, j](double x, double t) { return f.rate(j, 0, 0, x, 0.0, t) - 0.5 * f.rate(j, 0, 0, 0.0, 0.0, t); });
    out.second.set(j, 0, [f, j](double x, double t) { return f.base(j, 0, 0, 0.0, x, t) - 0.5 * f.base(j, 0, 0, 0.0, 0.0, t); },
                   [f, j](double x, double t) { return f.rate(j, 0, 0, 0.0, x, t) - 0.5 * f.rate(j, 0, 0, 0.0, 0.0, t); });
    out.first.set(j, 1, [f, j](double x, double t) { return f.base(j, 1, 0, x, 0.0, t); },
                  [f, j](double x, double t) { return f.rate(j, 1, 0, x, 0.0, t); });
    out.second.set(j, 1, [f, j](double x, double t) { return f.base(j, 0, 1, 0.0, x, t); },
                   [f, j](double x, double t) { return f.rate(j, 0, 1, 0.0, x, t); });
  }
  return out;
}

void step_two_particle(TwoParticleState& s, const TwoCoinField& f, double t, double dt) {
  if (s.d1 != 2 || s.d2 != 2) throw std::invalid_argument("step_two_particle: coins must be 2-dimensional");
  apply_two_coin(s, f, 1, t, dt, false);
  if (dt != 0.0) apply_shift(ShiftKind::TwoParticleMinus, s);
  apply_two_coin(s, f, 2, t, dt, false);
  if (dt != 0.0) apply_shift(ShiftKind::TwoParticlePlus, s);
  apply_two_coin(s, f, 2, t, 0.0, true);
  apply_two_coin(s, f, 1, t, 0.0, true);
}

void apply_swap(TwoParticleState& s) {
  if (s.d1 != s.d2) throw std::invalid_argument("apply_swap: coin dimensions differ");
  TwoParticleState out = s;
  const int n = s.lattice.sites;
  for (int c1 = 0; c1 < s.d1; ++c1)
    for (int c2 = 0; c2 < s.d2; ++c2)
      for (int x1 = 0; x1 < n; ++x1)
        for (int x2 = 0; x2 < n; ++x2) out.at(c2, c1, x2, x1) = s.at(c1, c2, x1, x2);
  s = std::move(out);
}

TwoCoinField exchange_symmetrize(const TwoCoinField& f) {
  TwoCoinField out;
  for (int j = 1; j <= 2; ++j)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r) {
        if (!f.has(j, q, r) && !f.has(j, r, q)) continue;
        out.set(j, q, r,
                [f, j, q, r](double x1, double x2, double t) {
                  return 0.5 * (f.base(j, q, r, x1, x2, t) + f.base(j, r, q, x2, x1, t));
                },
                [f, j, q, r](double x1, double x2, double t) {
                  return 0.5 * (f.rate(j, q, r, x1, x2, t) + f.rate(j, r, q, x2, x1, t));
                });
      }
  return out;
}

CMat dense_two_particle_operator(const std::function<void(TwoParticleState&)>& op, const Lattice& lat) {
  const int n = lat.sites;
  const int dim = 4 * n * n;
  CMat m(dim, dim);
  for (int col = 0; col < dim; ++col) {
    TwoParticleState s(2, 2, lat);
    s.amplitudes[col] = 1.0;
    op(s);
    m.col(col) = s.amplitudes;
  }
  return m;
}

namespace {

struct PatchGenerator {
  std::array<std::array<cplx, 4>, 4> theta1{}, theta2{}, xi{};
};

PatchGenerator patch_generator(const TwoCoinField& f, double x1, double x2, double t, double d) {
  // Both particles share one lattice; particle 2 coordinates are offset so
  // that (x1, x2) sits at the patch centre.
  const double offset = x2 - x1;
  TwoCoinField shifted;
  for (int j = 1; j <= 2; ++j)
    for (int q = 0; q < 2; ++q)
      for (int r = 0; r < 2; ++r)
        if (f.has(j, q, r))
          shifted.set(j, q, r,
                      [f, j, q, r, offset](double y1, double y2, double s) { return f.base(j, q, r, y1, y2 + offset, s); },
                      [f, j, q, r, offset](double y1, double y2, double s) { return f.rate(j, q, r, y1, y2 + offset, s); });
  const Lattice lat(kPatch, d, x1);
  const int c = lat.site_of(x1);
  std::array<std::array<Mat4, 3>, 3> m;
  for (int s1 = -1; s1 <= 1; ++s1)
    for (int s2 = -1; s2 <= 1; ++s2)
      for (int col = 0; col < 4; ++col) {
        TwoParticleState st = make_two_particle_basis(col / 2, col % 2, lat.wrap(c + s1), lat.wrap(c + s2), 2, 2, lat);
        step_two_particle(st, shifted, t, d);
        for (int row = 0; row < 4; ++row) m[s1 + 1][s2 + 1](row, col) = st.at(row / 2, row % 2, c, c);
      }
  Mat4 sum = Mat4::Zero(), mom1 = Mat4::Zero(), mom2 = Mat4::Zero();
  for (int s1 = -1; s1 <= 1; ++s1)
    for (int s2 = -1; s2 <= 1; ++s2) {
      sum += m[s1 + 1][s2 + 1];
      mom1 -= static_cast<double>(s1) * m[s1 + 1][s2 + 1];
      mom2 -= static_cast<double>(s2) * m[s1 + 1][s2 + 1];
    }
  const Mat4 xi = kI * (sum - Mat4::Identity()) / d;
  PatchGenerator g;
  for (int q = 0; q < 4; ++q)
    for (int r = 0; r < 4; ++r) {
      const Mat4 b = kron4(pauli(q), pauli(r));
      g.theta1[q][r] = (b * mom1).trace() / 4.0;
      g.theta2[q][r] = (b * mom2).trace() / 4.0;
      g.xi[q][r] = (b * xi).trace() / 4.0;
    }
  return g;
}

}  // namespace

TwoHamiltonianTable two_effective_hamiltonian(const TwoCoinField& f, double x1, double x2, double t, double probe,
                                              double pattern_tol) {
  const PatchGenerator coarse = patch_generator(f, x1, x2, t, probe);
  const PatchGenerator fine = patch_generator(f, x1, x2, t, probe / 2.0);
  TwoHamiltonianTable h;
  const char* names[3] = {"Theta1", "Theta2", "Xi"};
  for (int q = 0; q < 4; ++q)
    for (int r = 0; r < 4; ++r) {
      h.theta1[q][r] = 2.0 * fine.theta1[q][r] - coarse.theta1[q][r];
      h.theta2[q][r] = 2.0 * fine.theta2[q][r] - coarse.theta2[q][r];
      h.xi[q][r] = 2.0 * fine.xi[q][r] - coarse.xi[q][r];
      h.residual = std::max({h.residual, std::abs(fine.theta1[q][r] - coarse.theta1[q][r]),
                             std::abs(fine.theta2[q][r] - coarse.theta2[q][r]), std::abs(fine.xi[q][r] - coarse.xi[q][r])});
      const cplx vals[3] = {h.theta1[q][r], h.theta2[q][r], h.xi[q][r]};
      for (int k = 0; k < 3; ++k)
        if (!allowed(k, q, r) && std::abs(vals[k]) > pattern_tol)
          h.violations.push_back(std::string(names[k]) + "_" + std::to_string(q) + std::to_string(r) + " = " +
                                 std::to_string(std::abs(vals[k])));
    }
  return h;
}

}  // namespace qw
