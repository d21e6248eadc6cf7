// atoms.hpp - isotropically averaged two-level atom.
//
// The dipole tensor is averaged over orientations, d^v d^v' -> delta_vv' |d|^2/3,
// so every response function here is a scalar. All quantities are natural units.
#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vdw/units.hpp"

namespace vdw {

using cplx = std::complex<double>;

enum class AtomState { ground, excited };

inline const char* to_string(AtomState s) { return s == AtomState::ground ? "ground" : "excited"; }

struct Populations {
  double p_g = 1.0;
  double p_e = 0.0;
};

class TwoLevelAtom {
 public:
  TwoLevelAtom(double omega0, double d2, Populations pop = {}, double gamma = 0.0)
      : omega0_(omega0), d2_(d2), pop_(pop), gamma_(gamma) {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
      throw std::domain_error("TwoLevelAtom: transition frequency must be positive");
    if (!(d2 > 0.0) || !std::isfinite(d2))
      throw std::domain_error("TwoLevelAtom: |d|^2 must be positive");
    if (!(gamma >= 0.0)) throw std::domain_error("TwoLevelAtom: linewidth must be non-negative");
    check_populations(pop);
  }

  double omega0() const { return omega0_; }
  double d2() const { return d2_; }
  double gamma() const { return gamma_; }
  double p_g() const { return pop_.p_g; }
  double p_e() const { return pop_.p_e; }
  Populations populations() const { return pop_; }

  /// gamma is only used for validity warnings.
  bool linewidth_suspicious() const { return gamma_ > 0.01 * omega0_; }

  TwoLevelAtom with_populations(Populations pop) const {
    return TwoLevelAtom(omega0_, d2_, pop, gamma_);
  }
  TwoLevelAtom in_state(AtomState s) const {
    return with_populations(s == AtomState::ground ? Populations{1.0, 0.0} : Populations{0.0, 1.0});
  }
  TwoLevelAtom with_omega0(double w) const { return TwoLevelAtom(w, d2_, pop_, gamma_); }

 private:
  static void check_populations(Populations p) {
    if (!(p.p_g >= 0.0 && p.p_g <= 1.0 && p.p_e >= 0.0 && p.p_e <= 1.0))
      throw std::domain_error("TwoLevelAtom: populations must lie in [0,1]");
    if (std::abs(p.p_g + p.p_e - 1.0) > 1e-12)
      throw std::domain_error("TwoLevelAtom: populations must sum to 1");
  }

  double omega0_;
  double d2_;
  Populations pop_;
  double gamma_;
};

inline double state_sign(AtomState s) { return s == AtomState::ground ? 1.0 : -1.0; }

/// alpha(omega) = |d|^2/3 [1/(s w0 - w - i eta) + 1/(s w0 + w + i eta)], s = +1 ground, -1 excited.
/// Accepts complex omega so the same expression serves analytic continuation.
inline cplx polarizability(const TwoLevelAtom& atom, AtomState state, cplx omega, double eta = 0.0) {
  if (eta < 0.0) throw std::domain_error("polarizability: eta must be non-negative");
  const double s = state_sign(state);
  const double w0 = atom.omega0();
  const cplx z = omega + cplx(0.0, eta);
  if (eta == 0.0 && std::abs(std::abs(z) - w0) < 1e-12 * w0 && std::abs(z.imag()) < 1e-12 * w0)
    throw std::domain_error("polarizability: unregularized evaluation on the resonance");
  return atom.d2() / 3.0 * (1.0 / (s * w0 - z) + 1.0 / (s * w0 + z));
}

inline cplx polarizability(const TwoLevelAtom& atom, AtomState state, double omega, double eta = 0.0) {
  if (omega < 0.0) throw std::domain_error("polarizability: omega must be non-negative");
  return polarizability(atom, state, cplx(omega, 0.0), eta);
}

/// alpha(i xi) = s (2/3)|d|^2 w0 / (w0^2 + xi^2).
inline double polarizability_imagfreq(const TwoLevelAtom& atom, AtomState state, double xi) {
  if (xi < 0.0) throw std::domain_error("polarizability_imagfreq: xi must be non-negative");
  const double w0 = atom.omega0();
  return state_sign(state) * (2.0 / 3.0) * atom.d2() * w0 / (w0 * w0 + xi * xi);
}

/// Linear response of a partially excited atom: p_g alpha_g + p_e alpha_e = (p_g - p_e) alpha_g.
inline cplx polarizability_populated(const TwoLevelAtom& atom, cplx omega, double eta = 0.0) {
  return (atom.p_g() - atom.p_e()) * polarizability(atom, AtomState::ground, omega, eta);
}

inline double polarizability_imagfreq_populated(const TwoLevelAtom& atom, double xi) {
  return (atom.p_g() - atom.p_e()) * polarizability_imagfreq(atom, AtomState::ground, xi);
}

/// N p_g - (N+1) p_e: absorption minus stimulated and spontaneous emission.
inline double population_factor(double p_g, double p_e, double n) {
  if (n < 0.0) throw std::domain_error("population_factor: occupation must be non-negative");
  return n * p_g - (n + 1.0) * p_e;
}

inline double population_factor(const TwoLevelAtom& atom, double n_at_omega0) {
  return population_factor(atom.p_g(), atom.p_e(), n_at_omega0);
}

/// Boltzmann populations of a two-level system at temperature T (natural units).
inline Populations boltzmann_populations(double omega0, double T) {
  if (!(T > 0.0)) throw std::domain_error("boltzmann_populations: temperature must be positive");
  if (!(omega0 > 0.0)) throw std::domain_error("boltzmann_populations: omega0 must be positive");
  const double b = std::exp(-omega0 / T);  // underflows cleanly to 0 at low T
  const double pg = 1.0 / (1.0 + b);
  return {pg, b * pg};
}

// -- presets -------------------------------------------------------------

/// Literature atom record, SI units.
struct AtomPreset {
  std::string name;
  double omega_ev = 0.0;
  double dipole_cm = 0.0;
  double gamma_per_s = 0.0;

  TwoLevelAtom to_atom(const UnitSystem& u, Populations pop = {}) const {
    return TwoLevelAtom(u.ev_to_natural(omega_ev), u.dipole2_to_natural(dipole_cm * dipole_cm), pop,
                        u.frequency_to_natural(gamma_per_s));
  }
};

/// Parses the `name = ...` key-value preset format. Throws with the line number on error.
inline std::vector<AtomPreset> parse_atom_presets(std::string_view text) {
  std::vector<AtomPreset> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error("atom presets line " + std::to_string(lineno) + ": " + msg);
  };
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key == "name") {
      if (val.empty()) fail("empty preset name");
      out.push_back(AtomPreset{val});
      continue;
    }
    if (out.empty()) fail("key '" + key + "' before any name");
    double x = 0.0;
    try {
      std::size_t used = 0;
      x = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument(val);
    } catch (const std::exception&) {
      fail("bad number '" + val + "'");
    }
    if (key == "omega_ev") out.back().omega_ev = x;
    else if (key == "dipole_cm") out.back().dipole_cm = x;
    else if (key == "gamma_per_s") out.back().gamma_per_s = x;
    else fail("unknown key '" + key + "'");
  }
  for (const auto& p : out)
    if (!(p.omega_ev > 0.0) || !(p.dipole_cm > 0.0) || p.gamma_per_s < 0.0)
      throw std::runtime_error("atom preset '" + p.name + "' is incomplete");
  return out;
}

}  // namespace vdw
