// config.hpp - sweep configuration (YAML) and its validation.
//
// Every problem found in a file is collected before reporting, each tagged
// with the YAML line it came from.
#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <yaml-cpp/yaml.h>

#include "vdw/asymptotics.hpp"
#include "vdw/presets.hpp"
#include "vdw/units.hpp"

namespace vdw {

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& p) {
    std::string s;
    for (const auto& x : p) s += (s.empty() ? "" : "\n") + x;
    return s;
  }
  std::vector<std::string> problems_;
};

enum class SweepVariable { R, omega_b_ratio, u_ratio };
enum class Spacing { lin, log };
enum class LengthUnit { lambda, reduced_lambda, metre };

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::R: return "R";
    case SweepVariable::omega_b_ratio: return "omega_b_ratio";
    case SweepVariable::u_ratio: return "u_ratio";
  }
  return "?";
}

struct AtomSpec {
  std::string preset;                 // optional; explicit keys override it
  std::optional<double> omega_ev;
  std::optional<double> omega_ratio;  // transition frequency relative to atom A
  std::optional<double> dipole_cm;
  std::optional<double> gamma_per_s;
  std::string state = "ground";       // ground | excited | thermal | mixed
  double p_excited = 0.0;             // used when state = mixed
};

struct FieldSpec {
  std::string type = "vacuum";  // vacuum | thermal | two_peak | tabulated
  std::optional<double> temperature_k;
  std::optional<double> temperature_ratio;  // k_B T / (hbar w_A)
  double total_energy_density = 0.0;        // J/m^3, two_peak
  double u_ratio = 0.5;                     // U(w_A)/U
  double bandwidth_ratio = 1e-6;            // peak width / w_A
  std::string file;                         // tabulated spectrum, relative to the config file
};

struct RangeSpec {
  double min = 0.0, max = 0.0;
  int count = 0;
  Spacing spacing = Spacing::lin;
  LengthUnit unit = LengthUnit::lambda;  // only for R
};

struct SeriesSpec {
  std::string variable;  // u_ratio | omega_b_ratio | temperature_ratio
  std::vector<double> values;
};

inline const std::vector<std::string>& known_outputs() {
  static const std::vector<std::string> v{"F_A_rho", "F_B_rho", "F_net", "U_A", "U_B", "regime"};
  return v;
}

struct SweepConfig {
  std::string scenario = "custom";
  std::string description;
  AtomSpec atom_a, atom_b;
  FieldSpec field;
  SweepVariable variable = SweepVariable::R;
  RangeSpec range;
  double separation = 0.0;  // fixed R for non-R sweeps
  LengthUnit separation_unit = LengthUnit::lambda;
  std::optional<SeriesSpec> series;
  std::vector<std::string> outputs = known_outputs();
  bool include_equilibrium = false;
  UnitMode units = UnitMode::si;
  RegimeThresholds thresholds;
  double force_rel_tol = 1e-6;
  std::filesystem::path base_dir = ".";
};

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> v{"fig1a", "fig1b", "fig1c", "fig1d", "fig1e", "fig1f", "fig2a",
                                          "fig2b", "fig2c", "fig2d", "fig2e", "fig3a", "fig3b", "fig3c",
                                          "fig3d", "custom"};
  return v;
}

namespace detail {

class ConfigReader {
 public:
  std::vector<std::string> problems;

  std::string where(const YAML::Node& n) const {
    const auto m = n.Mark();
    return m.line >= 0 ? "line " + std::to_string(m.line + 1) : "(no position)";
  }

  void fail(const YAML::Node& n, const std::string& key, const std::string& msg) {
    problems.push_back(where(n) + ": " + key + ": " + msg);
  }

  void check_keys(const YAML::Node& map, const std::string& ctx, const std::set<std::string>& allowed) {
    if (!map.IsMap()) return;
    for (const auto& kv : map) {
      const auto k = kv.first.as<std::string>();
      if (!allowed.count(k)) fail(kv.first, ctx.empty() ? k : ctx + "." + k, "unknown key");
    }
  }

  template <class T>
  std::optional<T> get(const YAML::Node& map, const std::string& key, const std::string& ctx) {
    if (!map.IsMap() || !map[key]) return std::nullopt;
    const YAML::Node n = map[key];
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      fail(n, ctx + key, "wrong type");
      return std::nullopt;
    }
  }

  std::optional<double> number(const YAML::Node& map, const std::string& key, const std::string& ctx) {
    auto v = get<double>(map, key, ctx);
    if (v && !std::isfinite(*v)) {
      fail(map[key], ctx + key, "must be finite");
      return std::nullopt;
    }
    return v;
  }

  std::optional<double> positive(const YAML::Node& map, const std::string& key, const std::string& ctx) {
    auto v = number(map, key, ctx);
    if (v && !(*v > 0.0)) {
      fail(map[key], ctx + key, "must be positive");
      return std::nullopt;
    }
    return v;
  }

  LengthUnit length_unit(const YAML::Node& map, const std::string& ctx, LengthUnit dflt) {
    const auto s = get<std::string>(map, "unit", ctx);
    if (!s) return dflt;
    if (*s == "lambda") return LengthUnit::lambda;
    if (*s == "reduced_lambda") return LengthUnit::reduced_lambda;
    if (*s == "m") return LengthUnit::metre;
    fail(map["unit"], ctx + "unit", "expected lambda | reduced_lambda | m (got '" + *s + "')");
    return dflt;
  }

  AtomSpec atom(const YAML::Node& n, const std::string& ctx) {
    AtomSpec a;
    if (!n || !n.IsMap()) {
      problems.push_back(where(n) + ": " + ctx + ": missing atom description");
      return a;
    }
    check_keys(n, ctx, {"preset", "omega_ev", "omega_ratio", "dipole_cm", "dipole_ea0", "gamma_per_s", "state",
                        "p_excited"});
    const std::string c = ctx + ".";
    if (auto p = get<std::string>(n, "preset", c)) {
      a.preset = *p;
      try {
        find_atom_preset(*p);
      } catch (const std::out_of_range& e) {
        fail(n["preset"], c + "preset", e.what());
      }
    }
    a.omega_ev = positive(n, "omega_ev", c);
    a.omega_ratio = positive(n, "omega_ratio", c);
    a.dipole_cm = positive(n, "dipole_cm", c);
    if (auto d = positive(n, "dipole_ea0", c)) {
      if (a.dipole_cm) fail(n["dipole_ea0"], c + "dipole_ea0", "give either dipole_cm or dipole_ea0");
      a.dipole_cm = *d * constants::ea0;
    }
    a.gamma_per_s = number(n, "gamma_per_s", c);
    if (a.gamma_per_s && *a.gamma_per_s < 0.0) fail(n["gamma_per_s"], c + "gamma_per_s", "must be non-negative");
    if (a.omega_ev && a.omega_ratio) fail(n["omega_ratio"], c + "omega_ratio", "give either omega_ev or omega_ratio");
    if (a.preset.empty() && !a.omega_ev && !a.omega_ratio)
      problems.push_back(where(n) + ": " + ctx + ": needs a preset or omega_ev");
    if (a.preset.empty() && !a.dipole_cm) problems.push_back(where(n) + ": " + ctx + ": needs a preset or a dipole");
    if (auto s = get<std::string>(n, "state", c)) {
      a.state = *s;
      if (*s != "ground" && *s != "excited" && *s != "thermal" && *s != "mixed")
        fail(n["state"], c + "state", "expected ground | excited | thermal | mixed (got '" + *s + "')");
    }
    if (auto p = number(n, "p_excited", c)) {
      a.p_excited = *p;
      if (a.state != "mixed") fail(n["p_excited"], c + "p_excited", "only used with state: mixed");
      if (*p < 0.0 || *p > 1.0) fail(n["p_excited"], c + "p_excited", "must lie in [0, 1]");
    }
    return a;
  }

  FieldSpec field(const YAML::Node& n) {
    FieldSpec f;
    if (!n) return f;  // vacuum
    if (!n.IsMap()) {
      fail(n, "field", "expected a mapping");
      return f;
    }
    check_keys(n, "field", {"type", "temperature_k", "temperature_ratio", "total_energy_density", "u_ratio",
                            "bandwidth_ratio", "file"});
    if (auto t = get<std::string>(n, "type", "field.")) f.type = *t;
    const std::string c = "field.";
    f.temperature_k = positive(n, "temperature_k", c);
    f.temperature_ratio = positive(n, "temperature_ratio", c);
    if (auto u = number(n, "total_energy_density", c)) f.total_energy_density = *u;
    if (auto u = number(n, "u_ratio", c)) f.u_ratio = *u;
    if (auto b = positive(n, "bandwidth_ratio", c)) f.bandwidth_ratio = *b;
    if (auto p = get<std::string>(n, "file", c)) f.file = *p;
    if (f.type == "thermal") {
      if (!f.temperature_k == !f.temperature_ratio)
        fail(n, "field", "thermal field needs exactly one of temperature_k, temperature_ratio");
    } else if (f.type == "two_peak") {
      if (!n["total_energy_density"]) fail(n, "field.total_energy_density", "required for two_peak");
      else if (f.total_energy_density < 0.0) fail(n["total_energy_density"], c + "total_energy_density", "must be non-negative");
      if (f.u_ratio < 0.0 || f.u_ratio > 1.0) fail(n["u_ratio"], c + "u_ratio", "must lie in [0, 1]");
      if (!(f.bandwidth_ratio < 1.0)) fail(n["bandwidth_ratio"], c + "bandwidth_ratio", "must be below 1");
    } else if (f.type == "tabulated") {
      if (f.file.empty()) fail(n, "field.file", "required for tabulated");
    } else if (f.type != "vacuum") {
      fail(n["type"], "field.type", "expected vacuum | thermal | two_peak | tabulated (got '" + f.type + "')");
    }
    return f;
  }
};

}  // namespace detail

/// Parses and validates a config document. `base_dir` resolves relative file paths.
inline SweepConfig parse_config(const YAML::Node& root, const std::filesystem::path& base_dir = ".") {
  detail::ConfigReader rd;
  SweepConfig cfg;
  cfg.base_dir = base_dir;
  if (!root.IsMap()) throw ValidationError({"config: top level must be a mapping"});
  rd.check_keys(root, "", {"scenario", "description", "atoms", "field", "sweep", "separation", "series", "outputs",
                           "include_equilibrium", "units", "regimes", "force_rel_tol"});

  if (auto s = rd.get<std::string>(root, "scenario", "")) {
    cfg.scenario = *s;
    const auto& names = scenario_names();
    if (std::find(names.begin(), names.end(), *s) == names.end())
      rd.fail(root["scenario"], "scenario", "unknown scenario '" + *s + "'");
  }
  if (auto s = rd.get<std::string>(root, "description", "")) cfg.description = *s;

  const YAML::Node atoms = root["atoms"];
  if (!atoms || !atoms.IsMap()) {
    rd.problems.push_back(rd.where(root) + ": atoms: required mapping with keys a and b");
  } else {
    rd.check_keys(atoms, "atoms", {"a", "b"});
    cfg.atom_a = rd.atom(atoms["a"], "atoms.a");
    cfg.atom_b = rd.atom(atoms["b"], "atoms.b");
    if (cfg.atom_a.omega_ratio) rd.fail(atoms["a"]["omega_ratio"], "atoms.a.omega_ratio", "atom a is the reference");
  }
  cfg.field = rd.field(root["field"]);

  const YAML::Node sw = root["sweep"];
  if (!sw || !sw.IsMap()) {
    rd.problems.push_back(rd.where(root) + ": sweep: required mapping");
  } else {
    rd.check_keys(sw, "sweep", {"variable", "min", "max", "count", "spacing", "unit"});
    const std::string c = "sweep.";
    const std::string var = rd.get<std::string>(sw, "variable", c).value_or("R");
    if (var == "R") cfg.variable = SweepVariable::R;
    else if (var == "omega_b_ratio") cfg.variable = SweepVariable::omega_b_ratio;
    else if (var == "u_ratio") cfg.variable = SweepVariable::u_ratio;
    else rd.fail(sw["variable"], c + "variable", "expected R | omega_b_ratio | u_ratio (got '" + var + "')");
    auto mn = rd.number(sw, "min", c), mx = rd.number(sw, "max", c);
    auto cnt = rd.get<int>(sw, "count", c);
    if (!mn) rd.problems.push_back(rd.where(sw) + ": sweep.min: required");
    if (!mx) rd.problems.push_back(rd.where(sw) + ": sweep.max: required");
    if (!cnt) rd.problems.push_back(rd.where(sw) + ": sweep.count: required");
    cfg.range.min = mn.value_or(0.0);
    cfg.range.max = mx.value_or(0.0);
    cfg.range.count = cnt.value_or(0);
    if (cnt && *cnt < 2) rd.fail(sw["count"], c + "count", "range count ≥ 2 required (got " + std::to_string(*cnt) + ")");
    if (mn && mx && !(*mn < *mx)) rd.fail(sw["max"], c + "max", "range needs min < max");
    const std::string sp = rd.get<std::string>(sw, "spacing", c).value_or("lin");
    if (sp == "lin") cfg.range.spacing = Spacing::lin;
    else if (sp == "log") cfg.range.spacing = Spacing::log;
    else rd.fail(sw["spacing"], c + "spacing", "expected lin | log (got '" + sp + "')");
    if (cfg.range.spacing == Spacing::log && mn && !(*mn > 0.0)) rd.fail(sw["min"], c + "min", "log spacing needs min > 0");
    if (cfg.variable == SweepVariable::R) {
      cfg.range.unit = rd.length_unit(sw, c, LengthUnit::lambda);
      if (mn && !(*mn > 0.0)) rd.fail(sw["min"], c + "min", "separations must be positive");
    } else if (sw["unit"]) {
      rd.fail(sw["unit"], c + "unit", "only meaningful for R sweeps");
    }
    if (cfg.variable == SweepVariable::u_ratio) {
      if (cfg.field.type != "two_peak") rd.fail(sw["variable"], c + "variable", "u_ratio sweeps need a two_peak field");
      if (mn && mx && (*mn < 0.0 || *mx > 1.0)) rd.fail(sw, c + "min/max", "u_ratio must lie in [0, 1]");
    }
    if (cfg.variable == SweepVariable::omega_b_ratio && mn && !(*mn > 0.0))
      rd.fail(sw["min"], c + "min", "frequency ratios must be positive");
  }

  if (cfg.variable != SweepVariable::R) {
    const YAML::Node sep = root["separation"];
    if (!sep || !sep.IsMap()) {
      rd.problems.push_back(rd.where(root) + ": separation: required ({value, unit}) when the sweep variable is not R");
    } else {
      rd.check_keys(sep, "separation", {"value", "unit"});
      cfg.separation = rd.positive(sep, "value", "separation.").value_or(0.0);
      if (!sep["value"]) rd.problems.push_back(rd.where(sep) + ": separation.value: required");
      cfg.separation_unit = rd.length_unit(sep, "separation.", LengthUnit::lambda);
    }
  } else if (root["separation"]) {
    rd.fail(root["separation"], "separation", "not used when sweeping R");
  }

  if (const YAML::Node se = root["series"]) {
    rd.check_keys(se, "series", {"variable", "values"});
    SeriesSpec s;
    s.variable = rd.get<std::string>(se, "variable", "series.").value_or("");
    if (s.variable != "u_ratio" && s.variable != "omega_b_ratio" && s.variable != "temperature_ratio")
      rd.fail(se, "series.variable", "expected u_ratio | omega_b_ratio | temperature_ratio");
    if (s.variable == to_string(cfg.variable)) rd.fail(se, "series.variable", "must differ from the sweep variable");
    if (auto v = rd.get<std::vector<double>>(se, "values", "series.")) s.values = *v;
    if (s.values.empty()) rd.fail(se, "series.values", "needs at least one value");
    if (s.variable == "u_ratio" && cfg.field.type != "two_peak") rd.fail(se, "series.variable", "u_ratio needs a two_peak field");
    if (s.variable == "temperature_ratio" && cfg.field.type != "thermal")
      rd.fail(se, "series.variable", "temperature_ratio needs a thermal field");
    for (double v : s.values) {
      if (s.variable == "u_ratio" && (v < 0.0 || v > 1.0)) rd.fail(se, "series.values", "u_ratio must lie in [0, 1]");
      if (s.variable != "u_ratio" && !(v > 0.0)) rd.fail(se, "series.values", "values must be positive");
    }
    cfg.series = s;
  }

  if (auto o = rd.get<std::vector<std::string>>(root, "outputs", "")) {
    cfg.outputs = *o;
    if (o->empty()) rd.fail(root["outputs"], "outputs", "needs at least one column");
    for (const auto& name : *o) {
      const auto& k = known_outputs();
      if (std::find(k.begin(), k.end(), name) == k.end())
        rd.fail(root["outputs"], "outputs", "unknown column '" + name + "' (known: F_A_rho, F_B_rho, F_net, U_A, U_B, regime)");
    }
  }
  if (auto b = rd.get<bool>(root, "include_equilibrium", "")) cfg.include_equilibrium = *b;
  if (auto u = rd.get<std::string>(root, "units", "")) {
    if (*u == "si") cfg.units = UnitMode::si;
    else if (*u == "natural") cfg.units = UnitMode::natural;
    else rd.fail(root["units"], "units", "expected si | natural");
  }
  if (const YAML::Node rg = root["regimes"]) {
    rd.check_keys(rg, "regimes", {"short_max", "long_min"});
    if (auto v = rd.positive(rg, "short_max", "regimes.")) cfg.thresholds.short_max = *v;
    if (auto v = rd.positive(rg, "long_min", "regimes.")) cfg.thresholds.long_min = *v;
    if (!(cfg.thresholds.long_min > cfg.thresholds.short_max)) rd.fail(rg, "regimes", "long_min must exceed short_max");
  }
  if (auto t = rd.positive(root, "force_rel_tol", "")) cfg.force_rel_tol = *t;

  const bool thermal_state = cfg.atom_a.state == "thermal" || cfg.atom_b.state == "thermal";
  if (thermal_state && cfg.field.type != "thermal")
    rd.problems.push_back(rd.where(root) + ": atoms: state 'thermal' needs a thermal field");

  if (!rd.problems.empty()) throw ValidationError(rd.problems);
  return cfg;
}

inline SweepConfig load_config(const std::filesystem::path& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path.string());
  } catch (const YAML::BadFile&) {
    throw ValidationError({path.string() + ": cannot read file"});
  } catch (const YAML::ParserException& e) {
    throw ValidationError({path.string() + ": line " + std::to_string(e.mark.line + 1) + ": parse error: " + e.msg});
  }
  try {
    return parse_config(root, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
  } catch (const ValidationError& e) {
    std::vector<std::string> p;
    for (const auto& s : e.problems()) p.push_back(path.string() + ": " + s);
    throw ValidationError(p);
  }
}

}  // namespace vdw
