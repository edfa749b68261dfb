// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Exit status is 0 when the set of failing criteria equals the --expect-fail set.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qwalk/curved.hpp"
#include "qwalk/engines.hpp"
#include "qwalk/neutrino.hpp"
#include "qwalk/observables.hpp"
#include "qwalk/scenarios.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/two_particle.hpp"

using namespace qw;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> manifest;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<Outcome()> run;
};

CMat sigma(int r) { return CMat(pauli(r)); }

CoinSchedule split_schedule(double theta) {
  return CoinSchedule::homogeneous(CoinAngles{}, CoinAngles{0.0, theta, 0.0, 0.0});
}

WalkState plane_wave(const CVec& coin, double k, const Lattice& lat) {
  WalkState s(2, lat);
  const double norm = 1.0 / std::sqrt(static_cast<double>(lat.sites));
  for (int c = 0; c < 2; ++c)
    for (int x = 0; x < lat.sites; ++x) s.at(c, x) = coin[c] * std::exp(kI * k * lat.position(x)) * norm;
  return s;
}

// Closed-form H_k with its eigenvalues folded into the principal branch of the step's logarithm.
CMat principal_closed_form(const SpectralParams& p, double k) {
  const MomentumModeSystem m = hk_closed_form(p, k);
  auto fold = [&](double e) { return std::remainder(e * p.dt, 2.0 * kPi) / p.dt; };
  const double shift = m.phase / p.dt;
  const double ep = fold(shift + m.E), em = fold(shift - m.E);
  return ep * m.phi_plus * m.phi_plus.adjoint() + em * m.phi_minus * m.phi_minus.adjoint();
}

Outcome dca_equivalence() {
  const Lattice lat(64, 1.0);
  double worst = 0.0;
  for (int i = 0; i <= 15; ++i) {
    const double theta = 0.1 * i;
    const CMat a = dense_operator([&](WalkState& s) { step_ssdqw(s, split_schedule(theta), 0.0, 1.0); }, 2, lat);
    const CMat b = dense_operator([&](WalkState& s) { step_dca(s, std::cos(theta), std::sin(theta)); }, 2, lat);
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-13, fmt::format("max entry difference {:.2e} over 16 angles", worst), {}};
}

Outcome matrix_log_oracle() {
  const Lattice lat(64, 1.0);
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> ang(-kPi / 2, kPi / 2), small(-0.3, 0.3), th(0.0, kPi / 2);
  double worst = 0.0;
  int blocks = 0;
  for (int trial = 0; trial < 10; ++trial) {
    SpectralParams dqw;
    dqw.family = WalkFamily::DQW;
    dqw.c1 = CoinAngles{small(rng), ang(rng), ang(rng), ang(rng)};
    SpectralParams ss;
    ss.family = WalkFamily::SSDQW;
    ss.c1 = CoinAngles{small(rng), ang(rng), ang(rng), ang(rng)};
    ss.c2 = CoinAngles{small(rng), ang(rng), ang(rng), ang(rng)};
    SpectralParams dca;
    dca.family = WalkFamily::DCA;
    const double t = th(rng);
    dca.eta1 = std::cos(t);
    dca.eta2 = std::sin(t);
    const std::vector<std::pair<SpectralParams, Engine>> cases{
        {dqw, DqwEngine{dqw.c1}},
        {ss, SsdqwEngine{CoinSchedule::homogeneous(ss.c1, ss.c2), 1.0}},
        {dca, DcaEngine{dca.eta1, dca.eta2}}};
    for (const auto& [p, engine] : cases)
      for (double k : momentum_grid(lat)) {
        const CMat h = hamiltonian_from_unitary(lattice_momentum_block(engine, k, lat), 1.0);
        worst = std::max(worst, (h - principal_closed_form(p, k)).cwiseAbs().maxCoeff());
        ++blocks;
      }
  }
  return {worst <= 1e-10, fmt::format("max entry difference {:.2e} over {} momentum blocks", worst, blocks), {}};
}

Outcome continuum_limit() {
  const ContinuumReport r = continuum_deviation(WalkFamily::SSDQW, 0.04, {100.0, 1000.0}, 0.1);
  return {r.ratio >= 9.0,
          fmt::format("deviation {:.3e} -> {:.3e}, ratio {:.3f}, fitted order {:.4f}", r.deviations.front(),
                      r.deviations.back(), r.ratio, r.order),
          {{"continuum_ratio", fmt::format("{:.17g}", r.ratio)}, {"continuum_order", fmt::format("{:.17g}", r.order)}}};
}

Outcome neutrino_oscillation() {
  const WalkCalibration cal;
  PmnsParams pp = PmnsParams::global_fit();
  pp.delta = pp.alpha1 = pp.alpha2 = 0.0;
  const Mat3 u = pmns_matrix(pp);
  double sum_dev = 0.0, oracle_dev = 0.0, start_dev = 0.0;
  for (int steps : {cal.steps_short, cal.steps_long}) {
    const auto walk = walk_probability_series(Flavor::E, steps, cal, u);
    const auto ref = analytic_probability_series(Flavor::E, steps, cal, u);
    start_dev = std::max(start_dev, std::abs(walk.front()[0] - 1.0));
    for (std::size_t i = 0; i < walk.size(); ++i) {
      sum_dev = std::max(sum_dev, std::abs(walk[i][0] + walk[i][1] + walk[i][2] - 1.0));
      for (int b = 0; b < 3; ++b) oracle_dev = std::max(oracle_dev, std::abs(walk[i][b] - ref[i][b]));
    }
  }
  const bool ok = sum_dev <= 1e-12 && oracle_dev <= 1e-9 && start_dev <= 1e-15;
  return {ok, fmt::format("norm {:.2e}, vs analytic {:.2e}, |P_ee(0)-1| {:.1e}", sum_dev, oracle_dev, start_dev), {}};
}

Outcome fine_oscillation() {
  const Lattice lat(257, 1.0);
  CVec coin(2);
  coin << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const WalkState init = product_state(coin, {{lat.site_of(0.0), 1.0}}, lat);
  ObservableSet rec;
  rec.probability = true;
  const double eta = 1.0 / std::sqrt(2.0);
  const auto dqw = evolve(init, DqwEngine{CoinAngles{0.0, kPi / 4, 0.0, 0.0}}, 100, rec).probability.back();
  const auto dca = evolve(init, DcaEngine{eta, eta}, 100, rec).probability.back();
  double n1 = 0.0, n2 = 0.0;
  int count = 0;
  for (int s = 0; s < lat.sites; ++s) {
    n1 += dqw[s];
    n2 += dca[s];
    if (std::abs(lat.position(s)) < 50.0 && dca[s] > 2.0 * dqw[s] && dca[s] > 0.0) ++count;
  }
  const bool ok = std::abs(n1 - 1.0) <= 1e-10 && std::abs(n2 - 1.0) <= 1e-10 && count >= 10;
  return {ok, fmt::format("norms {:.1e}/{:.1e}, {} interior sites with P_dca > 2 P_dqw", n1 - 1.0, n2 - 1.0, count), {}};
}

Outcome curved_coefficients() {
  struct Probe {
    std::string label;
    CoinSchedule schedule;
    double x, t;
  };
  std::vector<Probe> probes;
  for (const char* name : {"nonstatic", "flat", "static"}) {
    const CurvedScenario sc = curved_scenario(name);
    const double t = (sc.start_step + 3) * sc.dt();
    for (double x : {-0.3, 0.0, 0.25}) probes.push_back({name, sc.schedule, x, t});
  }
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    CoinSchedule s;
    for (int j = 1; j <= 2; ++j)
      for (int q = 0; q < 2; ++q) {
        const double c0 = u(rng), c1 = u(rng), k = 1.0 + u(rng), ph = u(rng), c2 = 0.3 * u(rng);
        const double d0 = u(rng), d1 = u(rng);
        s.set(j, q, [=](double x, double t) { return c0 + c1 * std::sin(k * x + ph) + c2 * t; },
              [=](double x, double) { return d0 + d1 * std::cos(k * x); });
      }
    probes.push_back({"random", s, 0.5 * u(rng), 0.5 + 0.5 * u(rng)});
  }
  double worst = 0.0, ratio_lo = 1e300, ratio_hi = 0.0;
  int exact = 0;
  bool ok = true;
  for (const auto& p : probes) {
    const auto num = numeric_coefficients(p.schedule, p.x, p.t);
    const double e1 = closed_form_coefficients(p.schedule, p.x, p.t, 1e-3).max_difference(num);
    const double e2 = closed_form_coefficients(p.schedule, p.x, p.t, 5e-4).max_difference(num);
    worst = std::max(worst, e1);
    ok = ok && e1 <= 1e-6;
    if (e1 <= 1e-9) {
      // the stencil is exact for fields linear in x; only extraction noise remains
      ++exact;
      continue;
    }
    const double r = e1 / e2;
    ratio_lo = std::min(ratio_lo, r);
    ratio_hi = std::max(ratio_hi, r);
    ok = ok && r >= 3.5 && r <= 4.5;
  }
  return {ok,
          fmt::format("max error {:.2e}, halving ratios [{:.3f}, {:.3f}], {} of {} probes at the noise floor", worst,
                      ratio_lo, ratio_hi, exact, probes.size()),
          {}};
}

Outcome modified_identity() {
  double worst_zero = 0.0, lo = 1e300, hi = 0.0;
  for (const auto& name : curved_scenario_names()) {
    const CurvedScenario sc = curved_scenario(name);
    const double t = (sc.start_step + 2) * sc.dt();
    worst_zero = std::max(worst_zero, identity_deviation(sc.schedule, t, 0.0));
    const double r = identity_deviation(sc.schedule, t, 1e-2) / identity_deviation(sc.schedule, t, 1e-3);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  const bool ok = worst_zero <= 1e-14 && lo >= 9.0 && hi <= 11.0;
  return {ok, fmt::format("|U(t,0)-I| {:.1e}, dt ratio [{:.3f}, {:.3f}]", worst_zero, lo, hi), {}};
}

Outcome scenario_reproduction() {
  double drift = 0.0, static_left = 0.0, static_boundary = 0.0, static_core = 0.0;
  for (const auto& name : curved_scenario_names()) {
    const CurvedScenario sc = curved_scenario(name);
    ObservableSet rec;
    rec.probability = name == "static";
    rec.start_step = sc.start_step;
    const Trajectory tr = evolve(sc.initial, ModifiedEngine{sc.schedule, sc.dt()}, sc.n_steps, rec);
    for (double n : tr.norms) drift = std::max(drift, std::abs(n - 1.0));
    if (name == "static") {
      const auto& p = tr.probability.back();
      for (int s = 0; s < sc.lattice.sites; ++s) {
        const int n = sc.lattice.signed_index(s);
        if (n < 0) static_left += p[s];
        if (n < -5 && n >= -50) static_core += p[s];
      }
      static_boundary = tr.boundary_probability;
    }
  }
  const bool ok = drift <= 1e-9 && static_left < 1e-3;
  return {ok,
          fmt::format("norm drift {:.1e}, static P(x<0) {:.3e} (beyond horizon, no wrap: {:.1e}; boundary {:.2e})",
                      drift, static_left, static_core, static_boundary),
          {}};
}

Outcome two_particle_structure() {
  CoinSchedule a, b;
  a.set(1, 1, [](double x, double) { return 0.3 + x; }, [](double, double) { return 0.5; });
  a.set(2, 1, [](double x, double) { return -0.6 - 2 * x; }, [](double, double) { return 0.04; });
  a.set(1, 0, [](double x, double t) { return x * t; }, [](double x, double) { return 0.2 * x; });
  b.set(1, 1, [](double x, double) { return 0.1 * x * x; });
  b.set(2, 1, [](double, double) { return 0.7; }, [](double, double) { return 0.3; });
  const TwoCoinField sep = separable_field(a, b);
  const Lattice lat(12, 1.0 / 12);
  const SeparableFactors found = is_separable_form(sep, lat);

  double fact = 0.0;
  for (double x1 : {lat.position(2), lat.position(7)})
    for (double x2 : {lat.position(4), lat.position(10)}) {
      const double t = 0.3;
      const auto h = two_effective_hamiltonian(sep, x1, x2, t);
      const auto ha = numeric_coefficients(a, x1, t), hb = numeric_coefficients(b, x2, t);
      for (int q = 0; q < 4; ++q)
        for (int r = 0; r < 4; ++r) {
          const cplx e1 = r == 0 ? ha.theta[q] : 0.0, e2 = q == 0 ? hb.theta[r] : 0.0;
          const cplx ex = (r == 0 ? ha.xi[q] : 0.0) + (q == 0 ? hb.xi[r] : 0.0);
          fact = std::max({fact, std::abs(h.theta1[q][r] - e1), std::abs(h.theta2[q][r] - e2), std::abs(h.xi[q][r] - ex)});
        }
    }

  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_int_distribution<int> site(0, lat.sites - 1);
  std::size_t violations = 0;
  for (int trial = 0; trial < 10; ++trial) {
    TwoCoinField f;
    for (int j = 1; j <= 2; ++j)
      for (int q = 0; q < 2; ++q)
        for (int r = 0; r < 2; ++r) {
          const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng), d0 = u(rng), d1 = u(rng);
          f.set(j, q, r, [=](double x1, double x2, double t) { return c0 + c1 * std::sin(2 * x1 + c2 * x2) + 0.3 * c3 * t; },
                [=](double x1, double x2, double) { return d0 + d1 * std::cos(x1 - x2); });
        }
    for (int p = 0; p < 3; ++p)
      violations += two_effective_hamiltonian(f, lat.position(site(rng)), lat.position(site(rng)), 0.2).violations.size();
  }
  const bool ok = found.separable && fact < 1e-9 && violations == 0;
  return {ok,
          fmt::format("separable detected {}, factorization error {:.2e}, {} off-pattern components over 30 points",
                      found.separable, fact, violations),
          {}};
}

Outcome entanglement_properties() {
  // momentum eigenstates stay unentangled
  const Lattice ring(64, 1.0);
  CVec coin(2);
  coin << 0.6, cplx(0.0, 0.8);
  double plane = 0.0;
  ObservableSet rec;
  rec.entropy = true;
  for (const Engine& e : {Engine{DqwEngine{CoinAngles{0.0, kPi / 4, 0.0, 0.0}}}, Engine{SsdqwEngine{split_schedule(kPi / 4), 1.0}}})
    for (double v : evolve(plane_wave(coin, 2.0 * kPi * 5 / 64, ring), e, 100, rec).entropy) plane = std::max(plane, std::abs(v));

  const Lattice lat(257, 1.0);
  const int origin = lat.site_of(0.0);
  double lo = 0.0, hi = 0.0;
  auto sweep_variance = [&](const Engine& e) {
    std::vector<double> late;
    for (int ia = 0; ia < 16; ++ia)
      for (int ip = 0; ip < 9; ++ip) {
        const WalkState init = product_state(bloch_coin(2.0 * kPi * ia / 16, kPi * ip / 8), {{origin, 1.0}}, lat);
        const auto ent = evolve(init, e, 100, rec).entropy;
        for (double v : ent) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        late.push_back(average_late_entropy(ent, 10));
      }
    double mean = 0.0, var = 0.0;
    for (double v : late) mean += v;
    mean /= late.size();
    for (double v : late) var += (v - mean) * (v - mean);
    return var / late.size();
  };
  const double var_dqw = sweep_variance(DqwEngine{CoinAngles{0.0, kPi / 4, 0.0, 0.0}});
  const double var_ss = sweep_variance(SsdqwEngine{split_schedule(kPi / 4), 1.0});
  const bool ok = plane <= 1e-12 && lo >= -1e-12 && hi <= std::log(2.0) + 1e-12 && var_ss > var_dqw;
  return {ok,
          fmt::format("plane-wave entropy {:.1e}, range [{:.2e}, {:.4f}], sweep variance SS {:.3e} vs DQW {:.3e}", plane, lo,
                      hi, var_ss, var_dqw),
          {}};
}

Outcome zitterbewegung() {
  const int n = 128, steps = 512;
  const Lattice lat(n, 1.0);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> th(0.2, 1.3);
  std::uniform_int_distribution<int> mode(1, n / 4 - 1);  // keeps E below pi/2 so the tone is not aliased
  int worst_bins = 0;
  for (int i = 0; i < 10; ++i) {
    const double theta = th(rng), k = 2.0 * kPi * mode(rng) / n;
    SpectralParams p;
    p.c2 = CoinAngles{0.0, theta, 0.0, 0.0};
    const auto m = hk_closed_form(p, k);
    const CVec coin = (m.phi_plus + m.phi_minus) / std::sqrt(2.0);
    auto series = expectation_series(plane_wave(coin, k, lat), sigma(3), SsdqwEngine{split_schedule(theta), 1.0}, steps);
    series.resize(steps);
    const double f = dominant_frequency(series);
    const double expect = zbw_frequency(theta, k, 1.0, 1.0);
    worst_bins = std::max(worst_bins, static_cast<int>(std::lround(std::abs(f - expect) * steps)));
  }
  return {worst_bins <= 1, fmt::format("worst offset {} bin(s) over 10 draws", worst_bins), {}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::vector<int> expect_fail;
  std::string manifest_path;
  std::vector<int> only;
  app.add_option("--expect-fail", expect_fail, "criteria whose failure is recorded and tolerated");
  app.add_option("--manifest", manifest_path, "write key=value results here");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "DCA and split-step operators coincide", 5, dca_equivalence},
      {2, "matrix logarithm matches closed-form H_k", 10, matrix_log_oracle},
      {3, "continuum limit convergence", 5, continuum_limit},
      {4, "three-flavor oscillation", 10, neutrino_oscillation},
      {5, "DCA fine oscillation", 2, fine_oscillation},
      {6, "curved coefficients numeric vs closed form", 30, curved_coefficients},
      {7, "modified walk identity at zero step", 5, modified_identity},
      {8, "curved scenarios at nominal sizes", 180, scenario_reproduction},
      {9, "two-particle structure", 60, two_particle_structure},
      {10, "entanglement properties", 300, entanglement_properties},
      {11, "Zitterbewegung frequency", 10, zitterbewegung},
  };

  std::set<int> failed;
  std::vector<std::pair<std::string, std::string>> manifest;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = o.pass && secs <= c.budget_s;
    if (!pass) failed.insert(c.id);
    fmt::print("{} {:>2} {:<44} {:8.3f} s (budget {:g} s)  {}\n", pass ? "PASS" : "FAIL", c.id, c.title, secs, c.budget_s,
               o.detail);
    manifest.push_back({fmt::format("criterion_{}", c.id), pass ? "pass" : "fail"});
    manifest.push_back({fmt::format("criterion_{}_seconds", c.id), fmt::format("{:.3f}", secs)});
    manifest.insert(manifest.end(), o.manifest.begin(), o.manifest.end());
  }
  if (!manifest_path.empty()) {
    std::ofstream out(manifest_path);
    for (const auto& [k, v] : manifest) out << k << '=' << v << '\n';
  }
  std::set<int> expected(expect_fail.begin(), expect_fail.end());
  if (!only.empty()) {
    std::set<int> keep;
    for (int id : expected)
      if (std::find(only.begin(), only.end(), id) != only.end()) keep.insert(id);
    expected = keep;
  }
  if (failed != expected) {
    fmt::print("failing set differs from the expected set\n");
    return 1;
  }
  return 0;
}
