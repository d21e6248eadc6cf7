// manifest.hpp - JSON record of everything a sweep depended on.
//
// No timestamps or host details: two runs of the same config must produce the
// same manifest, just like the CSV.
#pragma once

#include <string>

#include <json.hpp>

#include "vdw/config.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/sweep.hpp"

namespace vdw {

namespace detail {

inline nlohmann::ordered_json atom_json(const AtomSpec& a) {
  nlohmann::ordered_json j;
  if (!a.preset.empty()) j["preset"] = a.preset;
  if (a.omega_ev) j["omega_ev"] = *a.omega_ev;
  if (a.omega_ratio) j["omega_ratio"] = *a.omega_ratio;
  if (a.dipole_cm) j["dipole_cm"] = *a.dipole_cm;
  if (a.gamma_per_s) j["gamma_per_s"] = *a.gamma_per_s;
  j["state"] = a.state;
  if (a.state == "mixed") j["p_excited"] = a.p_excited;
  return j;
}

inline const char* unit_name(LengthUnit u) {
  switch (u) {
    case LengthUnit::lambda: return "lambda";
    case LengthUnit::reduced_lambda: return "reduced_lambda";
    case LengthUnit::metre: return "m";
  }
  return "?";
}

}  // namespace detail

inline nlohmann::ordered_json sweep_manifest(const SweepConfig& cfg, const SweepOptions& opt) {
  using J = nlohmann::ordered_json;
  const ScenarioBuilder b(cfg);
  J m;
  m["tool"] = "vdw";
  m["version"] = version;
  m["scenario"] = cfg.scenario;
  if (!cfg.description.empty()) m["description"] = cfg.description;

  J c;
  c["atoms"]["a"] = detail::atom_json(cfg.atom_a);
  c["atoms"]["b"] = detail::atom_json(cfg.atom_b);
  J f;
  f["type"] = cfg.field.type;
  if (cfg.field.temperature_k) f["temperature_k"] = *cfg.field.temperature_k;
  if (cfg.field.temperature_ratio) f["temperature_ratio"] = *cfg.field.temperature_ratio;
  if (cfg.field.type == "two_peak") {
    f["total_energy_density"] = cfg.field.total_energy_density;
    f["u_ratio"] = cfg.field.u_ratio;
    f["bandwidth_ratio"] = cfg.field.bandwidth_ratio;
  }
  if (!cfg.field.file.empty()) f["file"] = cfg.field.file;
  c["field"] = f;
  c["sweep"] = {{"variable", to_string(cfg.variable)},
                {"min", cfg.range.min},
                {"max", cfg.range.max},
                {"count", cfg.range.count},
                {"spacing", cfg.range.spacing == Spacing::log ? "log" : "lin"}};
  if (cfg.variable == SweepVariable::R) c["sweep"]["unit"] = detail::unit_name(cfg.range.unit);
  else c["separation"] = {{"value", cfg.separation}, {"unit", detail::unit_name(cfg.separation_unit)}};
  if (cfg.series) c["series"] = {{"variable", cfg.series->variable}, {"values", cfg.series->values}};
  c["outputs"] = cfg.outputs;
  c["include_equilibrium"] = cfg.include_equilibrium;
  c["regimes"] = {{"short_max", cfg.thresholds.short_max}, {"long_min", cfg.thresholds.long_min}};
  m["config"] = c;

  const UnitMode mode = opt.units.value_or(cfg.units);
  m["run"] = {{"fast", opt.fast}, {"units", mode == UnitMode::si ? "si" : "natural"}};

  m["constants"] = {{"hbar_J_s", constants::hbar}, {"c_m_per_s", constants::c},    {"k_B_J_per_K", constants::k_B},
                    {"e_C", constants::e},          {"a0_m", constants::a0},      {"eps0_F_per_m", constants::eps0}};
  const QuadratureSpec q;
  m["tolerances"] = {{"force_richardson_rel", cfg.force_rel_tol},
                     {"force_step_rule", "h = min(1e-3 R, 1e-2 / (2 max(w_A, w_B)))"},
                     {"quadrature_rel", q.rel_tol},
                     {"quadrature_l1_floor", q.l1_floor}};
  const UnitSystem& u = b.units();
  m["derived"] = {{"omega_A_rad_per_s", u.frequency_unit()},
                  {"lambda_A_m", b.lambda_a_si()},
                  {"reduced_lambda_A_m", u.length_unit()},
                  {"force_unit_N", u.force_unit()},
                  {"energy_unit_J", u.energy_unit()}};
  return m;
}

}  // namespace vdw
