// vdw - sweep driver for the two-atom potentials and forces.
//
//   vdw sweep --config fig1f --out fig1f.csv [--fast] [--workers N] [--units si|natural]
//   vdw validate --config my.yaml
//   vdw presets
//
// Exit status: 0 success, 1 invalid input, 2 at least one row failed numerically.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vdw/config.hpp"
#include "vdw/manifest.hpp"
#include "vdw/sweep.hpp"

#ifndef VDW_PRESET_DIR
#define VDW_PRESET_DIR "presets"
#endif

namespace fs = std::filesystem;

namespace {

std::vector<std::string> preset_configs() {
  std::vector<std::string> names;
  std::error_code ec;
  for (const auto& e : fs::directory_iterator(VDW_PRESET_DIR, ec))
    if (e.path().extension() == ".yaml") names.push_back(e.path().stem().string());
  std::sort(names.begin(), names.end());
  return names;
}

// A path if it exists, otherwise the name of a bundled preset.
fs::path resolve_config(const std::string& arg) {
  if (fs::is_regular_file(arg)) return arg;
  const fs::path p = fs::path(VDW_PRESET_DIR) / (arg + ".yaml");
  if (fs::is_regular_file(p)) return p;
  std::string avail;
  for (const auto& n : preset_configs()) avail += (avail.empty() ? "" : ", ") + n;
  throw vdw::ValidationError({"no config file or preset named '" + arg + "' (presets: " + avail + ")"});
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int cmd_validate(const std::string& arg) {
  const fs::path path = resolve_config(arg);
  const vdw::SweepConfig cfg = vdw::load_config(path);
  const vdw::ScenarioBuilder b(cfg);
  const vdw::UnitSystem& u = b.units();
  const double wb = b.omega_b({});
  std::cout << "config: " << path.string() << " (valid)\n"
            << "scenario: " << cfg.scenario << "\n";
  if (!cfg.description.empty()) std::cout << "description: " << cfg.description << "\n";
  std::cout << "omega_A: " << fmt(u.frequency_unit()) << " rad/s (" << fmt(vdw::angular_to_ev(u.frequency_unit()))
            << " eV)\n"
            << "omega_B/omega_A: " << fmt(wb) << "\n"
            << "lambda_A = 2 pi c / omega_A: " << fmt(b.lambda_a_si()) << " m\n";
  const double r_short = cfg.thresholds.short_max / std::max(1.0, wb);
  const double r_long = cfg.thresholds.long_min / std::min(1.0, wb);
  const double lam = b.length_to_natural(1.0, vdw::LengthUnit::lambda);
  std::cout << "short regime: R < " << fmt(u.length_to_si(r_short)) << " m (" << fmt(r_short / lam) << " lambda_A)\n"
            << "long regime:  R > " << fmt(u.length_to_si(r_long)) << " m (" << fmt(r_long / lam) << " lambda_A)\n"
            << "sweep: " << vdw::to_string(cfg.variable) << " in [" << fmt(cfg.range.min) << ", "
            << fmt(cfg.range.max) << "], " << cfg.range.count << " points\n";
  return 0;
}

int cmd_sweep(const std::string& arg, const std::string& out, const vdw::SweepOptions& opt) {
  const vdw::SweepConfig cfg = vdw::load_config(resolve_config(arg));
  const vdw::SweepTable table = vdw::run_sweep(cfg, opt);
  {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out);
    f << vdw::to_csv(table);
  }
  {
    std::ofstream f(out + ".manifest.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + out + ".manifest.json");
    f << vdw::sweep_manifest(cfg, opt).dump(2) << "\n";
  }
  std::cerr << out << ": " << table.rows.size() << " rows, " << table.failed_rows << " failed\n";
  return table.failed_rows ? 2 : 0;
}

int cmd_presets() {
  std::cout << "scenarios:\n";
  for (const auto& n : preset_configs()) {
    std::string desc;
    try {
      desc = vdw::load_config(fs::path(VDW_PRESET_DIR) / (n + ".yaml")).description;
    } catch (const std::exception& e) {
      desc = std::string("(invalid: ") + e.what() + ")";
    }
    std::cout << "  " << n << "  " << desc << "\n";
  }
  std::cout << "atoms:\n";
  for (const auto& p : vdw::builtin_atom_presets())
    std::cout << "  " << p.name << "  " << p.omega_ev << " eV, |d| = " << p.dipole_cm << " C m\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"van der Waals potentials and forces between two atoms in a photon field"};
  app.require_subcommand(1);

  std::string config, out;
  vdw::SweepOptions opt;
  std::string units;

  auto* sweep = app.add_subcommand("sweep", "evaluate a config and write CSV + manifest");
  sweep->add_option("--config", config, "config file or preset name")->required();
  sweep->add_option("--out", out, "CSV output path")->required();
  sweep->add_flag("--fast", opt.fast, "use asymptotic forms inside their regimes");
  sweep->add_option("--workers", opt.workers, "worker threads (0 = all cores)");
  sweep->add_option("--units", units, "si | natural (overrides the config)")->check(CLI::IsMember({"si", "natural"}));

  auto* validate = app.add_subcommand("validate", "check a config without computing");
  validate->add_option("--config", config, "config file or preset name")->required();

  app.add_subcommand("presets", "list bundled scenarios and atoms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*sweep) {
      if (!units.empty()) opt.units = units == "si" ? vdw::UnitMode::si : vdw::UnitMode::natural;
      return cmd_sweep(config, out, opt);
    }
    if (*validate) return cmd_validate(config);
    return cmd_presets();
  } catch (const vdw::ValidationError& e) {
    std::cerr << "invalid configuration:\n";
    for (const auto& p : e.problems()) std::cerr << "  " << p << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
