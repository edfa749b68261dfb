#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "qwalk/expr.hpp"
#include "qwalk/scenario.hpp"
#include "qwalk/scenarios.hpp"

namespace qw {

ConfigError::ConfigError(const std::string& msg, int line, int column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

ConfigError::ConfigError(const std::string& msg, const std::string& key_path)
    : std::runtime_error(key_path + ": " + msg), key_path_(key_path) {}

Engine Scenario::walk_engine() const {
  switch (engine) {
    case EngineKind::DQW: return DqwEngine{coin};
    case EngineKind::SSDQW: return SsdqwEngine{schedule, dt()};
    case EngineKind::DCA: return DcaEngine{eta1, eta2};
    case EngineKind::Modified: return ModifiedEngine{schedule, dt()};
    case EngineKind::Neutrino: return NeutrinoEngine{calibration.theta};
  }
  throw std::logic_error("unhandled engine kind");
}

namespace {

struct Entry {
  std::string value;
  int line = 0;
  int value_column = 0;
};

using Section = std::map<std::string, Entry>;

std::string trim(const std::string& s, std::size_t* lead = nullptr) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  if (lead) *lead = b;
  return s.substr(b, e - b + 1);
}

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = [] {
    std::map<std::string, std::set<std::string>> k;
    k["scenario"] = {"name", "builtin", "engine", "steps", "start_step", "mass"};
    k["lattice"] = {"sites", "L"};
    std::set<std::string> coin = {"eta1", "eta2"};
    for (int q = 0; q < 4; ++q)
      for (int j = 1; j <= 2; ++j) {
        coin.insert("theta" + std::to_string(q) + "_" + std::to_string(j));
        coin.insert("rate" + std::to_string(q) + "_" + std::to_string(j));
      }
    k["coin"] = coin;
    k["neutrino"] = {"theta_1", "theta_2", "theta_3", "k_tilde", "theta12_deg", "theta13_deg", "theta23_deg",
                     "delta_deg", "flavor"};
    k["initial"] = {"coin_re", "coin_im", "positions"};
    k["observables"] = {"probability", "heatmap", "entropy", "oscillation"};
    k["run"] = {"memory_budget_mb"};
    return k;
  }();
  return keys;
}

std::map<std::string, Section> tokenize(const std::string& text) {
  std::map<std::string, Section> out;
  std::istringstream in(text);
  std::string raw;
  std::string current;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
    std::size_t lead = 0;
    const std::string line = trim(body, &lead);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("section header missing ']'", line_no, static_cast<int>(lead + line.size()));
      current = trim(line.substr(1, line.size() - 2));
      if (!allowed_keys().count(current))
        throw ConfigError("unknown section [" + current + "]", line_no, static_cast<int>(lead) + 1);
      out[current];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line_no, static_cast<int>(lead) + 1);
    if (current.empty()) throw ConfigError("key outside of any section", line_no, static_cast<int>(lead) + 1);
    const std::string key = trim(body.substr(0, eq));
    if (key.empty()) throw ConfigError("empty key", line_no, static_cast<int>(lead) + 1);
    if (!allowed_keys().at(current).count(key))
      throw ConfigError("unknown key '" + key + "' in [" + current + "]", line_no, static_cast<int>(lead) + 1);
    std::size_t vlead = 0;
    const std::string value = trim(body.substr(eq + 1), &vlead);
    if (value.empty()) throw ConfigError("missing value for '" + key + "'", line_no, static_cast<int>(eq) + 2);
    Section& sec = out[current];
    if (sec.count(key)) throw ConfigError("duplicate key '" + key + "'", line_no, static_cast<int>(lead) + 1);
    sec[key] = Entry{value, line_no, static_cast<int>(eq + 1 + vlead) + 1};
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Section> s) : sections_(std::move(s)) {}

  bool has(const std::string& sec, const std::string& key) const {
    auto it = sections_.find(sec);
    return it != sections_.end() && it->second.count(key);
  }
  bool has_section(const std::string& sec) const { return sections_.count(sec) > 0; }

  const Entry& entry(const std::string& sec, const std::string& key) const { return sections_.at(sec).at(key); }

  Expression expression(const std::string& sec, const std::string& key) const {
    const Entry& e = entry(sec, key);
    try {
      return Expression::parse(e.value);
    } catch (const ExprError& err) {
      throw ConfigError("bad expression in '" + key + "' (" + err.what() + ")", e.line, e.value_column + err.column() - 1);
    }
  }

  double number(const std::string& sec, const std::string& key, double fallback) const {
    if (!has(sec, key)) return fallback;
    const Expression ex = expression(sec, key);
    if (ex.depends_on_x() || ex.depends_on_t()) throw ConfigError("must be a constant", sec + "." + key);
    return ex.eval(ExprEnv{});
  }

  int integer(const std::string& sec, const std::string& key, int fallback) const {
    const double v = number(sec, key, fallback);
    if (v != std::floor(v) || std::abs(v) > 2e9) throw ConfigError("must be an integer", sec + "." + key);
    return static_cast<int>(v);
  }

  bool flag(const std::string& sec, const std::string& key, bool fallback) const {
    if (!has(sec, key)) return fallback;
    const std::string& v = entry(sec, key).value;
    if (v == "true" || v == "yes" || v == "1") return true;
    if (v == "false" || v == "no" || v == "0") return false;
    throw ConfigError("expected true or false, got '" + v + "'", sec + "." + key);
  }

  std::string text(const std::string& sec, const std::string& key, const std::string& fallback) const {
    return has(sec, key) ? entry(sec, key).value : fallback;
  }

  std::vector<double> list(const std::string& sec, const std::string& key) const {
    std::vector<double> out;
    std::stringstream ss(entry(sec, key).value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string s = trim(item);
      try {
        const Expression ex = Expression::parse(s);
        out.push_back(ex.eval(ExprEnv{}));
      } catch (const ExprError& err) {
        throw ConfigError(std::string("bad list item '") + s + "': " + err.what(), sec + "." + key);
      }
    }
    return out;
  }

 private:
  std::map<std::string, Section> sections_;
};

EngineKind engine_from_name(const std::string& s) {
  if (s == "dqw") return EngineKind::DQW;
  if (s == "ssdqw") return EngineKind::SSDQW;
  if (s == "dca") return EngineKind::DCA;
  if (s == "modified") return EngineKind::Modified;
  if (s == "neutrino") return EngineKind::Neutrino;
  throw ConfigError("unknown engine '" + s + "' (dqw, ssdqw, dca, modified, neutrino)", "scenario.engine");
}

Flavor flavor_from_name(const std::string& s) {
  if (s == "e") return Flavor::E;
  if (s == "mu") return Flavor::Mu;
  if (s == "tau") return Flavor::Tau;
  throw ConfigError("unknown flavor '" + s + "' (e, mu, tau)", "neutrino.flavor");
}

Field field_from(const Expression& ex, double L) {
  const double a = 1.0 / L;
  return [ex, a, L](double x, double t) { return ex.eval(ExprEnv{x, t, a, L}); };
}

void apply_run_overrides(const Reader& r, Scenario& sc) {
  sc.n_steps = r.integer("scenario", "steps", sc.n_steps);
  sc.name = r.text("scenario", "name", sc.name);
  auto& o = sc.observables;
  o.probability = r.flag("observables", "probability", o.probability);
  o.heatmap = r.flag("observables", "heatmap", o.heatmap);
  o.entropy = r.flag("observables", "entropy", o.entropy);
  o.oscillation = r.flag("observables", "oscillation", o.oscillation);
  sc.memory_budget_mb = r.number("run", "memory_budget_mb", sc.memory_budget_mb);
  for (auto& p : sc.parts) {
    p.n_steps = sc.n_steps;
    p.observables = sc.observables;
    p.memory_budget_mb = sc.memory_budget_mb;
  }
  if (sc.n_steps < 0) throw ConfigError("must be non-negative", "scenario.steps");
}

}  // namespace

Scenario parse_config(const std::string& text) {
  const Reader r(tokenize(text));

  if (r.has("scenario", "builtin")) {
    for (const char* sec : {"lattice", "coin", "neutrino", "initial"})
      if (r.has_section(sec))
        throw ConfigError("cannot be combined with a builtin scenario", std::string(sec));
    for (const char* key : {"engine", "start_step", "mass"})
      if (r.has("scenario", key)) throw ConfigError("cannot be combined with a builtin scenario", std::string("scenario.") + key);
    const std::string name = r.text("scenario", "builtin", "");
    Scenario sc;
    try {
      sc = builtin_scenario(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), "scenario.builtin");
    }
    apply_run_overrides(r, sc);
    sc.source = text;
    return sc;
  }

  Scenario sc;
  sc.name = r.text("scenario", "name", "scenario");
  sc.engine = engine_from_name(r.text("scenario", "engine", "modified"));
  sc.start_step = r.integer("scenario", "start_step", 0);
  sc.mass = r.number("scenario", "mass", sc.mass);
  sc.sites = r.integer("lattice", "sites", sc.sites);
  sc.L = r.number("lattice", "L", sc.L);
  if (sc.sites < 2) throw ConfigError("needs at least 2 sites", "lattice.sites");
  if (!(sc.L > 0.0)) throw ConfigError("must be positive", "lattice.L");
  sc.observables.oscillation = sc.engine == EngineKind::Neutrino;
  sc.observables.probability = sc.engine != EngineKind::Neutrino;
  apply_run_overrides(r, sc);

  switch (sc.engine) {
    case EngineKind::DQW: {
      auto angle = [&](const char* key) { return r.number("coin", key, 0.0); };
      sc.coin = CoinAngles{angle("theta0_1"), angle("theta1_1"), angle("theta2_1"), angle("theta3_1")};
      break;
    }
    case EngineKind::SSDQW:
    case EngineKind::Modified: {
      for (int j = 1; j <= 2; ++j)
        for (int q = 0; q < 4; ++q) {
          const std::string suffix = std::to_string(q) + "_" + std::to_string(j);
          if (r.has("coin", "theta" + suffix)) sc.schedule.set_base(j, q, field_from(r.expression("coin", "theta" + suffix), sc.L));
          if (r.has("coin", "rate" + suffix)) sc.schedule.set_rate(j, q, field_from(r.expression("coin", "rate" + suffix), sc.L));
        }
      break;
    }
    case EngineKind::DCA: {
      sc.eta1 = r.number("coin", "eta1", 1.0);
      sc.eta2 = r.number("coin", "eta2", 0.0);
      if (std::abs(sc.eta1 * sc.eta1 + sc.eta2 * sc.eta2 - 1.0) > 1e-12)
        throw ConfigError("DCA normalization |eta1|^2 + |eta2|^2 = 1 is violated", "coin.eta2");
      break;
    }
    case EngineKind::Neutrino: {
      auto& c = sc.calibration;
      c.theta = {r.number("neutrino", "theta_1", c.theta[0]), r.number("neutrino", "theta_2", c.theta[1]),
                 r.number("neutrino", "theta_3", c.theta[2])};
      c.k_tilde = r.number("neutrino", "k_tilde", c.k_tilde);
      const double deg = std::numbers::pi / 180.0;
      sc.pmns = PmnsParams::global_fit();
      sc.pmns.theta12 = r.number("neutrino", "theta12_deg", sc.pmns.theta12 / deg) * deg;
      sc.pmns.theta13 = r.number("neutrino", "theta13_deg", sc.pmns.theta13 / deg) * deg;
      sc.pmns.theta23 = r.number("neutrino", "theta23_deg", sc.pmns.theta23 / deg) * deg;
      sc.pmns.delta = r.number("neutrino", "delta_deg", sc.pmns.delta / deg) * deg;
      sc.flavor = flavor_from_name(r.text("neutrino", "flavor", "e"));
      if (!c.ultra_relativistic(false)) sc.warnings.push_back("k_tilde is below 10 max theta");
      break;
    }
  }

  if (sc.engine != EngineKind::Neutrino) {
    const Lattice lat = sc.lattice();
    std::vector<double> re{1.0 / std::sqrt(2.0), 0.0}, im{0.0, 1.0 / std::sqrt(2.0)};
    if (r.has("initial", "coin_re")) re = r.list("initial", "coin_re");
    if (r.has("initial", "coin_im")) im = r.list("initial", "coin_im");
    if (re.size() != 2 || im.size() != 2) throw ConfigError("coin vectors need two components", "initial.coin_re");
    CVec coin(2);
    coin << cplx(re[0], im[0]), cplx(re[1], im[1]);
    std::vector<double> pos{0.0};
    if (r.has("initial", "positions")) pos = r.list("initial", "positions");
    std::vector<std::pair<int, cplx>> sites;
    bool symmetric = true;
    for (double p : pos) {
      if (p != std::floor(p)) throw ConfigError("positions are signed site indices", "initial.positions");
      sites.push_back({lat.wrap(lat.site_of(0.0) + static_cast<long>(p)), 1.0});
      symmetric = symmetric && std::find(pos.begin(), pos.end(), -p) != pos.end();
    }
    try {
      sc.initial = product_state(coin, sites, lat);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what(), "initial.coin_re");
    }
    if (symmetric && sc.sites % 2 == 0)
      sc.warnings.push_back("even site count: the wraparound boundary is not mirror symmetric");
  }
  sc.source = text;
  return sc;
}

const std::vector<std::string>& builtin_scenario_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = curved_scenario_names();
    n.insert(n.end(), {"neutrino_short", "neutrino_long", "dca_vs_dqw"});
    return n;
  }();
  return names;
}

Scenario builtin_scenario(const std::string& name) {
  Scenario sc;
  sc.name = name;
  sc.source = "builtin:" + name;
  if (name == "neutrino_short" || name == "neutrino_long") {
    sc.engine = EngineKind::Neutrino;
    sc.n_steps = name == "neutrino_short" ? sc.calibration.steps_short : sc.calibration.steps_long;
    sc.pmns = PmnsParams::global_fit();
    sc.observables.probability = false;
    sc.observables.oscillation = true;
    sc.sites = 1;
    return sc;
  }
  if (name == "dca_vs_dqw") {
    const Lattice lat(257, 1.0);
    CVec coin(2);
    coin << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const WalkState start = product_state(coin, {{lat.site_of(0.0), 1.0}}, lat);
    sc.engine = EngineKind::DQW;
    sc.sites = lat.sites;
    sc.n_steps = 100;
    Scenario dqw = sc;
    dqw.name = "dqw";
    dqw.coin = CoinAngles{0.0, std::numbers::pi / 4.0, 0.0, 0.0};
    dqw.initial = start;
    Scenario dca = sc;
    dca.name = "dca";
    dca.engine = EngineKind::DCA;
    dca.eta1 = dca.eta2 = 1.0 / std::sqrt(2.0);
    dca.initial = start;
    sc.parts = {dqw, dca};
    return sc;
  }
  CurvedScenario c;
  try {
    c = curved_scenario(name);
  } catch (const std::invalid_argument&) {
    std::string valid;
    for (const auto& n : builtin_scenario_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown scenario '" + name + "'; valid names: " + valid);
  }
  sc.engine = EngineKind::Modified;
  sc.sites = c.lattice.sites;
  sc.L = c.L;
  sc.n_steps = c.n_steps;
  sc.start_step = c.start_step;
  sc.mass = c.mass;
  sc.schedule = c.schedule;
  sc.initial = c.initial;
  sc.observables.heatmap = true;
  return sc;
}

}  // namespace qw
