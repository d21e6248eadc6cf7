// sweep.hpp - config-driven evaluation of potentials and forces over a grid.
//
// Points are independent. Workers pull indices from a shared counter and write
// into a pre-sized result vector, so the output order (and every byte of it)
// does not depend on the worker count.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "vdw/asymptotics.hpp"
#include "vdw/atoms.hpp"
#include "vdw/config.hpp"
#include "vdw/fields.hpp"
#include "vdw/forces.hpp"
#include "vdw/potentials.hpp"
#include "vdw/presets.hpp"
#include "vdw/units.hpp"

namespace vdw {

inline constexpr const char* version = "0.1.0";

struct SweepOptions {
  bool fast = false;        // asymptotic forms inside their regimes
  unsigned workers = 0;     // 0: hardware concurrency
  std::optional<UnitMode> units;  // overrides the config
};

/// One fully resolved physical setup, natural units with w_A as the reference.
struct Scenario {
  TwoLevelAtom a{1.0, 1.0};
  TwoLevelAtom b{2.0, 1.0};
  PhotonField field;
  std::optional<double> T_eq;  // temperature for the equilibrium part, if requested
  double R = 1.0;
};

/// Knobs a sweep or a series may vary.
struct PointOverrides {
  std::optional<double> R;
  std::optional<double> omega_b_ratio;
  std::optional<double> u_ratio;
  std::optional<double> temperature_ratio;
};

namespace detail {

inline double atom_omega_ev(const AtomSpec& s) {
  if (s.omega_ev) return *s.omega_ev;
  return find_atom_preset(s.preset).omega_ev;
}

inline double atom_dipole_cm(const AtomSpec& s) {
  if (s.dipole_cm) return *s.dipole_cm;
  return find_atom_preset(s.preset).dipole_cm;
}

inline double atom_gamma(const AtomSpec& s) {
  if (s.gamma_per_s) return *s.gamma_per_s;
  return s.preset.empty() ? 0.0 : find_atom_preset(s.preset).gamma_per_s;
}

inline Populations populations_for(const AtomSpec& s, double omega0, std::optional<double> T) {
  if (s.state == "excited") return {0.0, 1.0};
  if (s.state == "mixed") return {1.0 - s.p_excited, s.p_excited};
  if (s.state == "thermal") {
    if (!T) throw std::invalid_argument("thermal atom state needs a thermal field");
    return boltzmann_populations(omega0, *T);
  }
  return {1.0, 0.0};
}

}  // namespace detail

/// Resolves configs against presets, units and an optional tabulated spectrum.
class ScenarioBuilder {
 public:
  explicit ScenarioBuilder(const SweepConfig& cfg)
      : cfg_(cfg), units_(UnitSystem::from_ev(detail::atom_omega_ev(cfg.atom_a))) {
    if (cfg_.field.type == "tabulated")
      tabulated_ = load_tabulated_field((cfg_.base_dir / cfg_.field.file).string(), units_);
  }

  const UnitSystem& units() const { return units_; }
  const SweepConfig& config() const { return cfg_; }

  /// Converts a length in `unit` to natural units (c / w_A).
  double length_to_natural(double v, LengthUnit unit) const {
    switch (unit) {
      case LengthUnit::lambda: return v * two_pi;
      case LengthUnit::reduced_lambda: return v;
      case LengthUnit::metre: return units_.length_to_natural(v);
    }
    return v;
  }

  /// 2 pi c / w_A in metres.
  double lambda_a_si() const { return two_pi * units_.length_unit(); }

  double omega_b(const PointOverrides& o) const {
    if (o.omega_b_ratio) return *o.omega_b_ratio;
    const AtomSpec& s = cfg_.atom_b;
    if (s.omega_ratio) return *s.omega_ratio;
    return units_.ev_to_natural(detail::atom_omega_ev(s));
  }

  std::optional<double> temperature(const PointOverrides& o) const {
    if (cfg_.field.type != "thermal") return std::nullopt;
    if (o.temperature_ratio) return *o.temperature_ratio;
    if (cfg_.field.temperature_ratio) return *cfg_.field.temperature_ratio;
    return units_.temperature_to_natural(*cfg_.field.temperature_k);
  }

  Scenario build(const PointOverrides& o) const {
    Scenario s;
    const double wa = 1.0, wb = omega_b(o);
    const auto T = temperature(o);
    s.a = TwoLevelAtom(wa, units_.dipole2_to_natural(std::pow(detail::atom_dipole_cm(cfg_.atom_a), 2)),
                       detail::populations_for(cfg_.atom_a, wa, T),
                       units_.frequency_to_natural(detail::atom_gamma(cfg_.atom_a)));
    s.b = TwoLevelAtom(wb, units_.dipole2_to_natural(std::pow(detail::atom_dipole_cm(cfg_.atom_b), 2)),
                       detail::populations_for(cfg_.atom_b, wb, T),
                       units_.frequency_to_natural(detail::atom_gamma(cfg_.atom_b)));
    const FieldSpec& f = cfg_.field;
    if (f.type == "thermal") {
      s.field = PhotonField::thermal(*T);
    } else if (f.type == "two_peak") {
      const double r = o.u_ratio.value_or(f.u_ratio);
      s.field = PhotonField::two_peak(wa, wb, r * f.total_energy_density, (1.0 - r) * f.total_energy_density,
                                      f.bandwidth_ratio * wa, units_);
    } else if (f.type == "tabulated") {
      s.field = *tabulated_;
    }
    // Non-thermal fields are measured against the zero-temperature equilibrium.
    if (cfg_.include_equilibrium) s.T_eq = T.value_or(0.0);
    if (!o.R) throw std::invalid_argument("scenario: no separation given");
    s.R = *o.R;
    return s;
  }

 private:
  SweepConfig cfg_;
  UnitSystem units_;
  std::optional<PhotonField> tabulated_;
};

/// Grid of sweep values in the variable's own unit.
inline std::vector<double> sweep_grid(const RangeSpec& r) {
  if (r.count < 2) throw std::invalid_argument("sweep grid: range count ≥ 2 required");
  std::vector<double> v(static_cast<std::size_t>(r.count));
  const double n = static_cast<double>(r.count - 1);
  for (int i = 0; i < r.count; ++i) {
    const double t = static_cast<double>(i) / n;
    if (r.spacing == Spacing::log) v[static_cast<std::size_t>(i)] = r.min * std::pow(r.max / r.min, t);
    else v[static_cast<std::size_t>(i)] = r.min + (r.max - r.min) * t;
  }
  v.front() = r.min;  // pin the ends against rounding of pow / lerp
  v.back() = r.max;
  return v;
}

/// Quantities at one point, natural units. Missing entries were not requested.
struct PointResult {
  std::optional<double> f_a, f_a_err, f_b, f_b_err, u_a, u_b;
  RegimeTag regime = RegimeTag::intermediate;
  std::string error;  // empty on success
  bool ok() const { return error.empty(); }
};

struct Request {
  bool forces = false;
  bool potentials = false;
  bool fast = false;
  RegimeThresholds thresholds;
  double force_rel_tol = 1e-6;
};

inline PointResult evaluate_point(const Scenario& s, const Request& req) {
  PointResult out;
  try {
    out.regime = classify_regime(s.a.omega0(), s.b.omega0(), s.R, req.thresholds).regime;
    const bool short_fast = req.fast && out.regime == RegimeTag::short_range;
    const bool long_fast = req.fast && out.regime == RegimeTag::long_range;
    const auto& t = req.thresholds;
    auto u_eq = [&](double R) { return s.T_eq ? u_eq_two_atom(s.a, s.b, *s.T_eq, R) : 0.0; };
    if (req.potentials) {
      for (Target tg : {Target::A, Target::B}) {
        double u;
        if (short_fast) u = u_neq_short(tg, s.a, s.b, s.field, s.R, t) + u_eq(s.R);
        else if (long_fast) u = u_neq_long(tg, s.a, s.b, s.field, s.R, t) + u_eq(s.R);
        else u = potential_exact(tg, s.a, s.b, s.field, s.T_eq, s.R);
        (tg == Target::A ? out.u_a : out.u_b) = u;
      }
    }
    if (req.forces) {
      StepSpec step;
      step.rel_tol = req.force_rel_tol;
      for (Target tg : {Target::A, Target::B}) {
        Derivative d;
        if (short_fast || long_fast) {
          d.value = short_fast ? f_neq_short(tg, s.a, s.b, s.field, s.R, t) : f_neq_long(tg, s.a, s.b, s.field, s.R, t);
          if (s.T_eq) {
            // The equilibrium part keeps its exact derivative.
            const double h = default_force_step(s.a, s.b, s.R);
            const Derivative e = richardson_derivative(u_eq, s.R, h, req.force_rel_tol);
            d.value += (tg == Target::A ? -1.0 : 1.0) * e.value;
            d.error = e.error;
          }
        } else {
          d = force_exact(tg, s.a, s.b, s.field, s.T_eq, s.R, step);
        }
        if (tg == Target::A) {
          out.f_a = d.value;
          out.f_a_err = d.error;
        } else {
          out.f_b = d.value;
          out.f_b_err = d.error;
        }
      }
    }
    for (const auto& v : {out.f_a, out.f_a_err, out.f_b, out.f_b_err, out.u_a, out.u_b})
      if (v && !std::isfinite(*v)) throw std::runtime_error("non-finite result");
  } catch (const std::exception& e) {
    PointResult failed;
    failed.regime = out.regime;
    failed.error = e.what();
    return failed;
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `workers` threads.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct SweepColumn {
  std::string name;
  std::string unit;
};

struct SweepTable {
  std::vector<SweepColumn> columns;
  std::vector<std::vector<std::string>> rows;  // formatted cells
  std::size_t failed_rows = 0;
};

inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0" in the output
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline std::string sanitize_cell(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') c = ';';
  return s;
}

inline std::string series_suffix(const std::optional<SeriesSpec>& series, double value) {
  if (!series) return "";
  return "@" + series->variable + "=" + format_number(value);
}

inline bool wants(const SweepConfig& c, const char* name) {
  return std::find(c.outputs.begin(), c.outputs.end(), name) != c.outputs.end();
}

}  // namespace detail

/// Evaluates the whole sweep and formats the table.
inline SweepTable run_sweep(const SweepConfig& cfg, const SweepOptions& opt = {}) {
  const ScenarioBuilder builder(cfg);
  const UnitMode mode = opt.units.value_or(cfg.units);
  const UnitSystem& us = builder.units();
  const bool si = mode == UnitMode::si;
  const char* u_len = si ? "m" : "c/w_A";
  const char* u_force = si ? "N" : "hbar*w_A^2/c";
  const char* u_energy = si ? "J" : "hbar*w_A";
  auto len_out = [&](double r) { return si ? us.length_to_si(r) : r; };
  auto force_out = [&](double f) { return si ? us.force_to_si(f) : f; };
  auto energy_out = [&](double u) { return si ? us.energy_to_si(u) : u; };

  Request req;
  req.fast = opt.fast;
  req.thresholds = cfg.thresholds;
  req.force_rel_tol = cfg.force_rel_tol;
  req.forces = detail::wants(cfg, "F_A_rho") || detail::wants(cfg, "F_B_rho") || detail::wants(cfg, "F_net");
  req.potentials = detail::wants(cfg, "U_A") || detail::wants(cfg, "U_B");

  const std::vector<double> grid = sweep_grid(cfg.range);
  const std::vector<double> series_values = cfg.series ? cfg.series->values : std::vector<double>{0.0};
  const std::size_t ns = series_values.size();

  auto overrides = [&](double x, double sv) {
    PointOverrides o;
    if (cfg.variable == SweepVariable::R) o.R = builder.length_to_natural(x, cfg.range.unit);
    else o.R = builder.length_to_natural(cfg.separation, cfg.separation_unit);
    if (cfg.variable == SweepVariable::omega_b_ratio) o.omega_b_ratio = x;
    if (cfg.variable == SweepVariable::u_ratio) o.u_ratio = x;
    if (cfg.series) {
      const auto& v = cfg.series->variable;
      if (v == "omega_b_ratio") o.omega_b_ratio = sv;
      else if (v == "u_ratio") o.u_ratio = sv;
      else if (v == "temperature_ratio") o.temperature_ratio = sv;
    }
    return o;
  };

  std::vector<PointResult> results(grid.size() * ns);
  parallel_for(results.size(), opt.workers, [&](std::size_t k) {
    const std::size_t i = k / ns, j = k % ns;
    try {
      results[k] = evaluate_point(builder.build(overrides(grid[i], series_values[j])), req);
    } catch (const std::exception& e) {
      results[k].error = e.what();
    }
  });

  SweepTable t;
  if (cfg.variable != SweepVariable::R) t.columns.push_back({to_string(cfg.variable), "1"});
  t.columns.push_back({"R", u_len});
  t.columns.push_back({"R_lambda", "lambda_A"});
  for (std::size_t j = 0; j < ns; ++j) {
    const std::string sfx = detail::series_suffix(cfg.series, series_values[j]);
    for (const auto& name : cfg.outputs) {
      if (name == "regime") t.columns.push_back({"regime" + sfx, "-"});
      else if (name == "U_A" || name == "U_B") t.columns.push_back({name + sfx, u_energy});
      else {
        t.columns.push_back({name + sfx, u_force});
        const std::string err = name == "F_net" ? "F_net_err" : name.substr(0, 4) + "err";
        t.columns.push_back({err + sfx, u_force});
      }
    }
  }
  t.columns.push_back({"status", "-"});

  const double lambda_nat = builder.length_to_natural(1.0, LengthUnit::lambda);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<std::string> row;
    const double R = overrides(grid[i], series_values[0]).R.value();
    if (cfg.variable != SweepVariable::R) row.push_back(format_number(grid[i]));
    row.push_back(format_number(len_out(R)));
    row.push_back(format_number(R / lambda_nat));
    std::string status = "ok";
    for (std::size_t j = 0; j < ns; ++j) {
      const PointResult& p = results[i * ns + j];
      if (!p.ok() && status == "ok") status = "error: " + detail::sanitize_cell(p.error);
      auto num = [&](const std::optional<double>& v, auto conv) {
        return p.ok() && v ? format_number(conv(*v)) : std::string();
      };
      for (const auto& name : cfg.outputs) {
        if (name == "regime") row.push_back(p.ok() ? to_string(p.regime) : "");
        else if (name == "U_A") row.push_back(num(p.u_a, energy_out));
        else if (name == "U_B") row.push_back(num(p.u_b, energy_out));
        else if (name == "F_A_rho") {
          row.push_back(num(p.f_a, force_out));
          row.push_back(num(p.f_a_err, force_out));
        } else if (name == "F_B_rho") {
          row.push_back(num(p.f_b, force_out));
          row.push_back(num(p.f_b_err, force_out));
        } else if (name == "F_net") {
          const bool have = p.f_a && p.f_b;
          row.push_back(have ? num(std::optional<double>(0.5 * (*p.f_a + *p.f_b)), force_out) : "");
          row.push_back(have ? num(std::optional<double>(0.5 * (*p.f_a_err + *p.f_b_err)), force_out) : "");
        }
      }
    }
    if (status != "ok") ++t.failed_rows;
    row.push_back(status);
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Header, `#units` line aligned with the columns, then the rows.
inline std::string to_csv(const SweepTable& t) {
  std::string s;
  for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c].name;
  s += "\n#units ";
  for (std::size_t c = 0; c < t.columns.size(); ++c) s += (c ? "," : "") + t.columns[c].unit;
  s += "\n";
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) s += (c ? "," : "") + row[c];
    s += "\n";
  }
  return s;
}

}  // namespace vdw
