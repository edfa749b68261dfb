#include "qwalk/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qw {

namespace {

constexpr double kMass = 0.04;

WalkState tilted_coin_state(const Lattice& lat, const std::vector<std::pair<int, cplx>>& sites) {
  CVec coin(2);
  coin << 1.0 / std::sqrt(2.0), kI / std::sqrt(2.0);
  return product_state(coin, sites, lat);
}

// theta^0_1 = -1000 x t, rate -0.03 x
void add_linear_potential(CoinSchedule& s) {
  s.set(1, 0, [](double x, double t) { return -1000.0 * x * t; }, [](double x, double) { return -0.03 * x; });
}

CurvedScenario nonstatic(bool gauge) {
  CurvedScenario sc;
  sc.name = gauge ? "nonstatic_gauge" : "nonstatic";
  sc.L = 150.0;
  sc.lattice = Lattice(400, 1.0 / sc.L);
  sc.n_steps = 200;
  // e^0_(0) = 1/t is singular at t = 0
  sc.start_step = 1;
  sc.schedule.set(1, 1, [](double x, double) { return std::numbers::pi / 8.0 + 2.0 * x; },
                  [](double, double) { return -2.0; });
  sc.schedule.set(2, 1, [](double x, double) { return -std::numbers::pi / 4.0 - 4.0 * x; },
                  [](double, double t) { return kMass * t; });
  if (gauge) add_linear_potential(sc.schedule);
  sc.initial = tilted_coin_state(sc.lattice, {{sc.lattice.site_of(0.0), 1.0}});
  sc.description = gauge ? "g00 = 1/t^2, g11 = -(cos 4x + sin 4x)^2/(2t^2), linear U(1) potential"
                         : "g00 = 1/t^2, g11 = -(cos 4x + sin 4x)^2/(2t^2)";
  return sc;
}

CurvedScenario flat() {
  CurvedScenario sc;
  sc.name = "flat";
  sc.L = 150.0;
  sc.lattice = Lattice(400, 1.0 / sc.L);
  sc.n_steps = 200;
  sc.schedule.set_rate(2, 1, [](double, double) { return kMass; });
  sc.initial = tilted_coin_state(sc.lattice, {{sc.lattice.site_of(0.0), 1.0}});
  sc.description = "Minkowski background";
  return sc;
}

CurvedScenario static_metric(const std::string& name, double offset, bool gauge, int steps) {
  CurvedScenario sc;
  sc.name = name;
  sc.L = 250.0;
  sc.lattice = Lattice(200, 1.0 / sc.L);
  sc.n_steps = steps;
  sc.schedule.set(1, 1, [offset](double x, double) { return 0.5 * std::acos(x + offset); },
                  [offset](double x, double) { return 0.5 / std::sqrt(1.0 - (x + offset) * (x + offset)); });
  sc.schedule.set(2, 1, [offset](double x, double) { return -std::acos(x + offset); },
                  [](double, double) { return kMass; });
  if (gauge) add_linear_potential(sc.schedule);
  return sc;
}

}  // namespace

const std::vector<std::string>& curved_scenario_names() {
  static const std::vector<std::string> names = {"nonstatic_gauge", "nonstatic", "flat", "static", "static_gauge",
                                                 "static_x2_delocalized"};
  return names;
}

CurvedScenario curved_scenario(const std::string& name) {
  if (name == "nonstatic_gauge") return nonstatic(true);
  if (name == "nonstatic") return nonstatic(false);
  if (name == "flat") return flat();
  if (name == "static" || name == "static_gauge") {
    const double a = 1.0 / 250.0;
    CurvedScenario sc = static_metric(name, 5.0 * a, name == "static_gauge", 800);
    sc.initial = tilted_coin_state(sc.lattice, {{sc.lattice.site_of(0.0), 1.0}});
    sc.description = name == "static" ? "g00 = 1, g11 = -(x + 5a)^2"
                                      : "g00 = 1, g11 = -(x + 5a)^2, linear U(1) potential";
    return sc;
  }
  if (name == "static_x2_delocalized") {
    CurvedScenario sc = static_metric(name, 0.0, false, 600);
    const Lattice& lat = sc.lattice;
    // (1/2)(up + i down) (x) (|-9a> + |9a>)
    sc.initial = tilted_coin_state(lat, {{lat.wrap(lat.site_of(0.0) - 9), 1.0 / std::sqrt(2.0)},
                                         {lat.wrap(lat.site_of(0.0) + 9), 1.0 / std::sqrt(2.0)}});
    sc.description = "g00 = 1, g11 = -x^2, delocalized start";
    return sc;
  }
  std::string valid;
  for (const auto& n : curved_scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown curved scenario '" + name + "'; valid names: " + valid);
}

}  // namespace qw
