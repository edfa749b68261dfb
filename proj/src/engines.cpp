#include "qwalk/engines.hpp"

#include <cmath>
#include <stdexcept>

#include <spdlog/spdlog.h>

#include "qwalk/observables.hpp"

namespace qw {

namespace {

void require_dim(const WalkState& s, int d, const char* who) {
  if (s.coin_dim != d)
    throw std::invalid_argument(std::string(who) + ": coin dimension " + std::to_string(s.coin_dim) + " != " +
                                std::to_string(d));
}

void apply_local(WalkState& s, const std::vector<CMat>& blocks, bool adjoint) {
  const int n = s.lattice.sites;
  const int d = s.coin_dim;
  CVec v(d);
  for (int x = 0; x < n; ++x) {
    for (int c = 0; c < d; ++c) v[c] = s.at(c, x);
    const CVec w = adjoint ? CVec(blocks[x].adjoint() * v) : CVec(blocks[x] * v);
    for (int c = 0; c < d; ++c) s.at(c, x) = w[c];
  }
}

std::vector<CMat> nonabelian_field(const CoinSchedule& sch, const NonabelianCoinSpec& spec, int j, double t, double dt,
                                   const Lattice& lat) {
  std::vector<CMat> out(lat.sites);
  for (int x = 0; x < lat.sites; ++x) out[x] = nonabelian_coin(sch, spec, j, lat.position(x), t, dt);
  return out;
}

}  // namespace

void apply_coin_field(WalkState& s, const PositionDiagonalCoin& coin, bool adjoint) {
  require_dim(s, 2, "apply_coin_field");
  const int n = s.lattice.sites;
  if (static_cast<int>(coin.size()) != n) throw std::invalid_argument("coin field size does not match lattice");
  cplx* up = s.amplitudes.data();
  cplx* dn = up + n;
  for (int x = 0; x < n; ++x) {
    const Mat2& m = coin[x];
    const cplx a = up[x], b = dn[x];
    if (adjoint) {
      up[x] = std::conj(m(0, 0)) * a + std::conj(m(1, 0)) * b;
      dn[x] = std::conj(m(0, 1)) * a + std::conj(m(1, 1)) * b;
    } else {
      up[x] = m(0, 0) * a + m(0, 1) * b;
      dn[x] = m(1, 0) * a + m(1, 1) * b;
    }
  }
}

void step_dqw(WalkState& s, const CoinAngles& coin) {
  require_dim(s, 2, "step_dqw");
  const PositionDiagonalCoin c(s.lattice.sites, u2_from_angles(coin));
  apply_coin_field(s, c);
  Shift(ShiftKind::Full, 2, s.lattice).apply(s);
}

void step_ssdqw(WalkState& s, const CoinSchedule& sch, double t, double dt) {
  require_dim(s, 2, "step_ssdqw");
  apply_coin_field(s, coin_field(sch, 1, t, dt, s.lattice));
  Shift(ShiftKind::HalfMinus, 2, s.lattice).apply(s);
  apply_coin_field(s, coin_field(sch, 2, t, dt, s.lattice));
  Shift(ShiftKind::HalfPlus, 2, s.lattice).apply(s);
}

void step_dca(WalkState& s, double eta1, double eta2) {
  require_dim(s, 2, "step_dca");
  if (std::abs(eta1 * eta1 + eta2 * eta2 - 1.0) > 1e-12)
    throw std::invalid_argument("DCA normalization violated: eta1^2 + eta2^2 must equal 1");
  const int n = s.lattice.sites;
  const CVec old = s.amplitudes;
  const cplx* up = old.data();
  const cplx* dn = up + n;
  const cplx mass = -kI * eta2;
  for (int x = 0; x < n; ++x) {
    const int xm = x == 0 ? n - 1 : x - 1;
    const int xp = x == n - 1 ? 0 : x + 1;
    s.amplitudes[x] = eta1 * up[xm] + mass * dn[x];
    s.amplitudes[n + x] = eta1 * dn[xp] + mass * up[x];
  }
}

void step_modified(WalkState& s, const CoinSchedule& sch, double t, double dt) {
  require_dim(s, 2, "step_modified");
  apply_coin_field(s, coin_field(sch, 1, t, dt, s.lattice));
  if (dt != 0.0) Shift(ShiftKind::HalfMinus, 2, s.lattice).apply(s);
  apply_coin_field(s, coin_field(sch, 2, t, dt, s.lattice));
  if (dt != 0.0) Shift(ShiftKind::HalfPlus, 2, s.lattice).apply(s);
  apply_coin_field(s, coin_field(sch, 2, t, 0.0, s.lattice), true);
  apply_coin_field(s, coin_field(sch, 1, t, 0.0, s.lattice), true);
}

void step_neutrino(WalkState& s, const std::array<double, 3>& theta) {
  require_dim(s, 6, "step_neutrino");
  const int n = s.lattice.sites;
  // C1 is the identity on all three sectors.
  Shift(ShiftKind::SectoredMinus, 6, s.lattice).apply(s);
  for (int j = 0; j < 3; ++j) {
    const double c = std::cos(theta[j]);
    const cplx ms = -kI * std::sin(theta[j]);
    cplx* up = s.amplitudes.data() + static_cast<long>(2 * j) * n;
    cplx* dn = up + n;
    for (int x = 0; x < n; ++x) {
      const cplx a = up[x], b = dn[x];
      up[x] = c * a + ms * b;
      dn[x] = ms * a + c * b;
    }
  }
  Shift(ShiftKind::SectoredPlus, 6, s.lattice).apply(s);
}

void step_nonabelian_modified(WalkState& s, const CoinSchedule& sch, const NonabelianCoinSpec& spec, double t,
                              double dt) {
  require_dim(s, 2 * spec.n, "step_nonabelian_modified");
  const Lattice& lat = s.lattice;
  apply_local(s, nonabelian_field(sch, spec, 1, t, dt, lat), false);
  if (dt != 0.0) Shift(ShiftKind::HalfMinus, s.coin_dim, lat).apply(s);
  apply_local(s, nonabelian_field(sch, spec, 2, t, dt, lat), false);
  if (dt != 0.0) Shift(ShiftKind::HalfPlus, s.coin_dim, lat).apply(s);
  apply_local(s, nonabelian_field(sch, spec, 2, t, 0.0, lat), true);
  apply_local(s, nonabelian_field(sch, spec, 1, t, 0.0, lat), true);
}

double engine_dt(const Engine& e) {
  return std::visit(
      [](const auto& x) -> double {
        if constexpr (requires { x.dt; }) return x.dt;
        else return 1.0;
      },
      e);
}

int engine_coin_dim(const Engine& e) {
  if (std::holds_alternative<NeutrinoEngine>(e)) return 6;
  if (const auto* na = std::get_if<NonabelianEngine>(&e)) return 2 * na->spec.n;
  return 2;
}

void step(WalkState& s, const Engine& engine, int step_index) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, DqwEngine>) step_dqw(s, e.coin);
        else if constexpr (std::is_same_v<T, SsdqwEngine>) step_ssdqw(s, e.schedule, step_index * e.dt, e.dt);
        else if constexpr (std::is_same_v<T, DcaEngine>) step_dca(s, e.eta1, e.eta2);
        else if constexpr (std::is_same_v<T, ModifiedEngine>) step_modified(s, e.schedule, step_index * e.dt, e.dt);
        else if constexpr (std::is_same_v<T, NeutrinoEngine>) step_neutrino(s, e.theta);
        else if constexpr (std::is_same_v<T, NonabelianEngine>)
          step_nonabelian_modified(s, e.schedule, e.spec, step_index * e.dt, e.dt);
      },
      engine);
}

double boundary_probability(const WalkState& s) {
  const int n = s.lattice.sites;
  const int hi = (n + 1) / 2 - 1;  // largest positive index
  const int lo = (n + 1) / 2;      // most negative index
  double p = 0.0;
  for (int c = 0; c < s.coin_dim; ++c) p += std::norm(s.at(c, hi)) + std::norm(s.at(c, lo));
  return p;
}

Trajectory evolve(WalkState state, const Engine& engine, int n_steps, const ObservableSet& record) {
  if (n_steps < 0) throw std::invalid_argument("evolve: n_steps must be non-negative");
  if (state.coin_dim != engine_coin_dim(engine)) throw std::invalid_argument("evolve: state/engine coin dimension mismatch");
  Trajectory tr;
  auto observe = [&](const WalkState& s) {
    tr.norms.push_back(norm(s));
    if (record.probability) tr.probability.push_back(position_probability(s));
    if (record.entropy) tr.entropy.push_back(entanglement_entropy(s));
    if (record.coin_observable) tr.expectation.push_back(coin_expectation(s, *record.coin_observable));
  };
  observe(state);
  double worst_boundary = boundary_probability(state);
  for (int i = 0; i < n_steps; ++i) {
    step(state, engine, record.start_step + i);
    observe(state);
    worst_boundary = std::max(worst_boundary, boundary_probability(state));
  }
  tr.boundary_probability = worst_boundary;
  if (worst_boundary > 1e-8)
    spdlog::warn("boundary probability reached {:.3e}; the walk wraps around the periodic lattice", worst_boundary);
  tr.final_state = std::move(state);
  return tr;
}

std::vector<double> expectation_series(WalkState state, const CMat& observable, const Engine& engine, int n_steps) {
  if ((observable - observable.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("expectation_series: observable is not Hermitian");
  std::vector<double> out;
  out.reserve(n_steps + 1);
  out.push_back(coin_expectation(state, observable));
  for (int i = 0; i < n_steps; ++i) {
    step(state, engine, i);
    out.push_back(coin_expectation(state, observable));
  }
  return out;
}

std::vector<double> crw_distribution(double pH, int n_steps, int initial_site, const Lattice& lattice) {
  if (pH < 0.0 || pH > 1.0) throw std::invalid_argument("crw: pH must lie in [0, 1]");
  if (n_steps < 0) throw std::invalid_argument("crw: n_steps must be non-negative");
  const int n = lattice.sites;
  std::vector<double> p(n, 0.0), q(n);
  p[lattice.wrap(initial_site)] = 1.0;
  for (int s = 0; s < n_steps; ++s) {
    for (int x = 0; x < n; ++x) q[x] = pH * p[lattice.wrap(x - 1)] + (1.0 - pH) * p[lattice.wrap(x + 1)];
    std::swap(p, q);
  }
  return p;
}

CMat dense_operator(const std::function<void(WalkState&)>& op, int coin_dim, const Lattice& lattice) {
  const int dim = coin_dim * lattice.sites;
  CMat m(dim, dim);
  for (int col = 0; col < dim; ++col) {
    WalkState s(coin_dim, lattice);
    s.amplitudes[col] = 1.0;
    op(s);
    m.col(col) = s.amplitudes;
  }
  return m;
}

}  // namespace qw
