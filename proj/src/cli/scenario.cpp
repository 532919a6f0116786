#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>

#include "optomech/cli.hpp"
#include "optomech/csv.hpp"
#include "optomech/error.hpp"

namespace optomech::cli {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::ConfigError, "key '" + key + "': " + why);
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, "not a number: '" + v + "'");
  if (!std::isfinite(x)) bad(key, "must be finite");
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  int x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) bad(key, "not an integer: '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  bad(key, "expected true or false");
}

const std::set<std::string> kSweepable{"delta", "eps", "kappa", "g_eff", "gamma", "n_m", "n_p"};

}  // namespace

std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::CovarianceOde: return "covariance_ode";
    case Engine::FullLindblad: return "full_lindblad";
  }
  return "?";
}

MechanicalDrive Scenario::drive() const { return drive(eps); }

MechanicalDrive Scenario::drive(double e) const { return drive_from_order(1.0, n, e, gamma, n_m); }

CavityConfig Scenario::cavity() const {
  CavityConfig c;
  c.delta = delta;
  c.kappa = kappa;
  c.n_p = n_p;
  c.Omega = Omega.value_or(0.0);
  c.chi0 = chi0.value_or(0.0);
  return c;
}

EffectiveCoupling Scenario::coupling() const {
  if (g_eff) return coupling_from_geff(cavity(), *g_eff);
  return coupling_from_pump(cavity());
}

ModelParams Scenario::model() const {
  ModelParams p;
  p.drive = drive();
  p.cavity = cavity();
  p.coupling = coupling();
  p.dims = dims;
  return p;
}

Scenario Scenario::with(std::string_view parameter, double value) const {
  Scenario s = *this;
  if (parameter == "delta") s.delta = value;
  else if (parameter == "eps") s.eps = value;
  else if (parameter == "kappa") s.kappa = value;
  else if (parameter == "g_eff") s.g_eff = value;
  else if (parameter == "gamma") s.gamma = value;
  else if (parameter == "n_m") s.n_m = value;
  else if (parameter == "n_p") s.n_p = value;
  else bad("sweep.parameter", "cannot sweep '" + std::string(parameter) + "'");
  return s;
}

std::vector<std::pair<std::string, std::string>> Scenario::echo() const {
  const auto opt = [](const std::optional<double>& v) { return v ? csv::number(*v) : std::string(); };
  return {
      {"scenario", name},
      {"n", std::to_string(n)},
      {"eps", csv::number(eps)},
      {"delta[nu0]", csv::number(delta)},
      {"kappa[nu0]", csv::number(kappa)},
      {"g_eff[nu0]", g_eff ? csv::number(*g_eff) : csv::number(coupling().g_eff)},
      {"Omega[nu0]", opt(Omega)},
      {"chi0[nu0]", opt(chi0)},
      {"gamma[nu0]", csv::number(gamma)},
      {"n_m", csv::number(n_m)},
      {"n_p", csv::number(n_p)},
      {"cav_dim", std::to_string(dims.cav)},
      {"mech_dim", std::to_string(dims.mech)},
  };
}

Scenario parse_scenario(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) bad(t, "line " + std::to_string(lineno) + " has no '='");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    const std::string val = trim(std::string_view(t).substr(eq + 1));
    if (key.empty()) bad("", "line " + std::to_string(lineno) + " has an empty key");
    if (!kv.emplace(key, val).second) bad(key, "given twice");
  }

  const auto ver = kv.find("schema_version");
  if (ver == kv.end()) bad("schema_version", "missing");
  if (to_int("schema_version", ver->second) != kSchemaVersion)
    bad("schema_version", "unsupported version " + ver->second);

  Scenario s;
  bool any_sweep = false;
  Sweep sw;
  std::set<std::string> sweep_keys;
  for (const auto& [key, v] : kv) {
    if (key == "schema_version") continue;
    else if (key == "name") {
      if (v.empty() || v.find_first_of("/\\,") != std::string::npos) bad(key, "must be a plain non-empty word");
      s.name = v;
    } else if (key == "n") s.n = to_int(key, v);
    else if (key == "eps") s.eps = to_double(key, v);
    else if (key == "gamma") s.gamma = to_double(key, v);
    else if (key == "n_m") s.n_m = to_double(key, v);
    else if (key == "delta") s.delta = to_double(key, v);
    else if (key == "kappa") s.kappa = to_double(key, v);
    else if (key == "n_p") s.n_p = to_double(key, v);
    else if (key == "g_eff") s.g_eff = to_double(key, v);
    else if (key == "Omega") s.Omega = to_double(key, v);
    else if (key == "chi0") s.chi0 = to_double(key, v);
    else if (key == "periods") s.periods = to_int(key, v);
    else if (key == "samples_per_period") s.samples_per_period = to_int(key, v);
    else if (key == "cav_dim") s.dims.cav = to_int(key, v);
    else if (key == "mech_dim") s.dims.mech = to_int(key, v);
    else if (key == "out_dir") s.out_dir = v;
    else if (key == "svg") s.svg = to_bool(key, v);
    else if (key == "table") {
      if (v == "mbar") s.table = TableKind::Mbar;
      else if (v == "ratio") s.table = TableKind::Ratio;
      else bad(key, "expected mbar or ratio");
    } else if (key == "engines") {
      s.engines.clear();
      std::string rest = v;
      while (!rest.empty()) {
        const auto c = rest.find(',');
        const std::string item = trim(rest.substr(0, c));
        rest = c == std::string::npos ? "" : rest.substr(c + 1);
        if (item == "analytic") s.engines.push_back(Engine::Analytic);
        else if (item == "covariance_ode") s.engines.push_back(Engine::CovarianceOde);
        else if (item == "full_lindblad") s.engines.push_back(Engine::FullLindblad);
        else bad(key, "unknown engine '" + item + "'");
      }
      if (s.engines.empty()) bad(key, "engine list is empty");
    } else if (key.rfind("sweep.", 0) == 0) {
      any_sweep = true;
      sweep_keys.insert(key);
      if (key == "sweep.parameter") {
        if (!kSweepable.contains(v)) bad(key, "cannot sweep '" + v + "'");
        sw.parameter = v;
      } else if (key == "sweep.min") sw.min = to_double(key, v);
      else if (key == "sweep.max") sw.max = to_double(key, v);
      else if (key == "sweep.count") sw.count = to_int(key, v);
      else bad(key, "unknown key");
    } else {
      bad(key, "unknown key");
    }
  }

  if (any_sweep) {
    for (const char* k : {"sweep.parameter", "sweep.min", "sweep.max", "sweep.count"})
      if (!sweep_keys.contains(k)) bad(k, "missing while other sweep keys are present");
    if (sw.count < 2) bad("sweep.count", "must be at least 2");
    s.sweep = sw;
  }
  if (s.Omega || s.chi0) {
    if (kv.contains("g_eff")) bad("g_eff", "give either g_eff or Omega and chi0");
    if (!s.Omega) bad("Omega", "missing while chi0 is given");
    if (!s.chi0) bad("chi0", "missing while Omega is given");
    s.g_eff.reset();
  }
  if (s.n < 1) bad("n", "must be a positive integer");
  if (!(s.kappa > 0.0)) bad("kappa", "must be positive");
  if (s.gamma < 0.0) bad("gamma", "must be non-negative");
  if (s.n_m < 0.0) bad("n_m", "must be non-negative");
  if (s.n_p < 0.0) bad("n_p", "must be non-negative");
  if (s.periods < 1) bad("periods", "must be at least 1");
  if (s.samples_per_period < 4) bad("samples_per_period", "must be at least 4");
  if (s.dims.cav < 4) bad("cav_dim", "must be at least 4");
  if (s.dims.mech < 4) bad("mech_dim", "must be at least 4");
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + file.string());
  return parse_scenario(in);
}

Scenario preset(std::string_view figure) {
  Scenario s;
  s.name = std::string(figure);
  s.svg = true;
  if (figure == "fig1") return s;
  s.sweep = Sweep{"delta", -1.2, -0.8, 81};
  if (figure == "fig2") return s;
  if (figure == "fig3") {
    s.table = TableKind::Ratio;
    return s;
  }
  throw Error(ErrorKind::ConfigError, "key 'figure': expected fig1, fig2 or fig3");
}

}  // namespace optomech::cli
