#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/os.h>

#include "qwalk/curved.hpp"
#include "qwalk/scenario.hpp"
#include "qwalk/scenarios.hpp"
#include "qwalk/spectral.hpp"
#include "qwalk/two_particle.hpp"

namespace fs = std::filesystem;
using namespace qw;

namespace {

using Clock = std::chrono::steady_clock;

void write_manifest(const fs::path& dir, const std::string& name, Clock::time_point t0,
                    const std::vector<std::pair<std::string, std::string>>& extra) {
  std::ofstream m(dir / "manifest.txt");
  m << "name=" << name << '\n';
  m << "version=" << library_version() << '\n';
  for (const auto& [k, v] : extra) m << k << '=' << v << '\n';
  m << fmt::format("wall_time_s={:.6f}\n", std::chrono::duration<double>(Clock::now() - t0).count());
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

int simulate(const std::string& config, const fs::path& out, int steps) {
  std::ifstream in(config);
  if (!in) throw std::runtime_error("cannot open " + config);
  std::stringstream buf;
  buf << in.rdbuf();
  Scenario sc = parse_config(buf.str());
  if (steps >= 0) {
    sc.n_steps = steps;
    for (auto& p : sc.parts) p.n_steps = steps;
  }
  for (const auto& w : sc.warnings) std::cerr << "warning: " << w << '\n';
  const RunReport rep = run_scenario(sc, out);
  for (const auto& f : rep.files) std::cout << f.string() << '\n';
  return 0;
}

int spectrum(const std::string& family, double theta, int sites, double L, const fs::path& out) {
  const auto t0 = Clock::now();
  SpectralParams p;
  p.a = p.dt = 1.0 / L;
  WalkFamily wf;
  if (family == "dqw") {
    wf = WalkFamily::DQW;
    p.c1 = CoinAngles{0.0, theta, 0.0, 0.0};
  } else if (family == "ssdqw") {
    wf = WalkFamily::SSDQW;
    p.c2 = CoinAngles{0.0, theta, 0.0, 0.0};
  } else if (family == "dca") {
    wf = WalkFamily::DCA;
    p.eta1 = std::cos(theta);
    p.eta2 = std::sin(theta);
  } else {
    throw std::invalid_argument("unknown family '" + family + "' (dqw, ssdqw, dca)");
  }
  p.family = wf;
  fs::create_directories(out);
  auto csv = fmt::output_file((out / "spectrum.csv").string());
  csv.print("k,E,H00_re,H00_im,H01_re,H01_im,H10_re,H10_im,H11_re,H11_im\n");
  for (double k : momentum_grid(Lattice(sites, p.a))) {
    const auto m = hk_closed_form(p, k);
    csv.print("{},{}", g17(k), g17(m.E));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) csv.print(",{},{}", g17(m.H(i, j).real()), g17(m.H(i, j).imag()));
    csv.print("\n");
  }
  csv.close();
  const ContinuumReport c = continuum_deviation(wf, 0.04, {100.0, 1000.0}, 0.1);
  write_manifest(out, "spectrum", t0,
                 {{"family", family}, {"theta", g17(theta)}, {"sites", std::to_string(sites)}, {"L", g17(L)},
                  {"continuum_ratio", g17(c.ratio)}, {"continuum_order", g17(c.order)}});
  std::cout << (out / "spectrum.csv").string() << '\n';
  return 0;
}

int neutrino(bool long_run, int steps, const fs::path& out) {
  Scenario sc = builtin_scenario(long_run ? "neutrino_long" : "neutrino_short");
  if (steps >= 0) sc.n_steps = steps;
  const RunReport rep = run_scenario(sc, out);
  for (const auto& f : rep.files) std::cout << f.string() << '\n';
  return 0;
}

int curved_coeffs(const std::string& name, int step, double h, int stride, const fs::path& out) {
  const auto t0 = Clock::now();
  const CurvedScenario sc = curved_scenario(name);
  const double t = (step < 0 ? sc.start_step : step) * sc.dt();
  fs::create_directories(out);
  auto csv = fmt::output_file((out / "coefficients.csv").string());
  csv.print("x,t,name,re,im\n");
  const Lattice& lat = sc.lattice;
  for (int n = -(lat.sites / 2); n <= (lat.sites + 1) / 2 - 1; n += stride) {
    const double x = lat.position(lat.wrap(n));
    const auto c = closed_form_coefficients(sc.schedule, x, t, h);
    const auto num = numeric_coefficients(sc.schedule, x, t);
    for (int r = 0; r < 4; ++r) {
      csv.print("{},{},Theta{},{},{}\n", g17(x), g17(t), r, g17(c.theta[r].real()), g17(c.theta[r].imag()));
      csv.print("{},{},Xi{},{},{}\n", g17(x), g17(t), r, g17(c.xi[r].real()), g17(c.xi[r].imag()));
      csv.print("{},{},numeric_Theta{},{},{}\n", g17(x), g17(t), r, g17(num.theta[r].real()), g17(num.theta[r].imag()));
      csv.print("{},{},numeric_Xi{},{},{}\n", g17(x), g17(t), r, g17(num.xi[r].real()), g17(num.xi[r].imag()));
    }
  }
  csv.close();
  write_manifest(out, "curved-coeffs", t0, {{"scenario", name}, {"t", g17(t)}, {"stencil_h", g17(h)}});
  std::cout << (out / "coefficients.csv").string() << '\n';
  return 0;
}

int two_particle(double strength, double hop, int points, const fs::path& out) {
  const auto t0 = Clock::now();
  // Coulomb-like interaction potential with a constant single-particle mixing angle
  TwoCoinField f;
  f.set(1, 0, 0, [](double, double, double) { return 0.0; },
        [strength](double x1, double x2, double) { return strength / std::abs(x1 - x2); });
  f.set(2, 1, 0, [hop](double, double, double) { return hop; });
  f.set(2, 0, 1, [hop](double, double, double) { return hop; });
  fs::create_directories(out);
  auto csv = fmt::output_file((out / "coefficients.csv").string());
  csv.print("x,t,name,re,im\n");
  std::size_t violations = 0;
  for (int i = 1; i <= points; ++i) {
    const double sep = static_cast<double>(i) / points;
    const auto h = two_effective_hamiltonian(f, 0.0, sep, 0.0);
    violations += h.violations.size();
    for (int q = 0; q < 4; ++q)
      for (int r = 0; r < 4; ++r) {
        auto row = [&](const char* tag, cplx v) {
          if (std::abs(v) > 1e-6) csv.print("{},0,{}_{}{},{},{}\n", g17(sep), tag, q, r, g17(v.real()), g17(v.imag()));
        };
        row("Theta1", h.theta1[q][r]);
        row("Theta2", h.theta2[q][r]);
        row("Xi", h.xi[q][r]);
      }
  }
  csv.close();
  write_manifest(out, "two-particle", t0,
                 {{"strength", g17(strength)}, {"mixing_angle", g17(hop)}, {"pattern_violations", std::to_string(violations)}});
  std::cout << (out / "coefficients.csv").string() << '\n';
  return violations == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coined quantum walk scenarios"};
  app.require_subcommand(1);
  std::string out = "out";
  int steps = -1;
  bool seedless = false;
  app.add_option("--out", out, "output directory");
  app.add_option("--steps", steps, "override the number of steps");
  app.add_flag("--seedless", seedless, "assert that no random numbers are used (always true)");
  app.set_version_flag("--version", library_version());

  auto* sim = app.add_subcommand("simulate", "run a scenario config");
  std::string config;
  sim->add_option("config", config, "config file")->required()->check(CLI::ExistingFile);

  auto* spec = app.add_subcommand("spectrum", "dump the momentum-space Hamiltonian");
  std::string family = "ssdqw";
  double theta = 0.5, L = 1.0;
  int sites = 64;
  spec->add_option("--family", family, "dqw, ssdqw or dca");
  spec->add_option("--theta", theta, "mixing angle");
  spec->add_option("--sites", sites, "lattice sites")->check(CLI::PositiveNumber);
  spec->add_option("--L", L, "inverse lattice spacing")->check(CLI::PositiveNumber);

  auto* nu = app.add_subcommand("neutrino", "three-flavor oscillation series");
  bool long_run = false;
  nu->add_flag("--long", long_run, "use the long calibration run");

  auto* cc = app.add_subcommand("curved-coeffs", "Hamiltonian coefficient fields of a curved scenario");
  std::string scenario_name = "static";
  int at_step = -1, stride = 1;
  double h = 1e-3;
  cc->add_option("--scenario", scenario_name, "built-in curved scenario");
  cc->add_option("--at-step", at_step, "time step index (default: first step)");
  cc->add_option("--stencil", h, "stencil spacing");
  cc->add_option("--stride", stride, "site stride")->check(CLI::PositiveNumber);

  auto* tp = app.add_subcommand("two-particle", "effective two-particle Hamiltonian for an interaction profile");
  double strength = 0.05, hop = 0.2;
  int points = 20;
  tp->add_option("--strength", strength, "interaction strength");
  tp->add_option("--mixing", hop, "single-particle mixing angle");
  tp->add_option("--points", points, "number of separations")->check(CLI::PositiveNumber);

  auto* ls = app.add_subcommand("list-scenarios", "print built-in scenario names");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*sim) return simulate(config, out, steps);
    if (*spec) return spectrum(family, theta, sites, L, out);
    if (*nu) return neutrino(long_run, steps, out);
    if (*cc) return curved_coeffs(scenario_name, at_step, h, stride, out);
    if (*tp) return two_particle(strength, hop, points, out);
    if (*ls) {
      for (const auto& n : builtin_scenario_names()) std::cout << n << '\n';
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
