// units.hpp - physical constants and the natural <-> SI boundary.
//
// Everything inside the library works in natural units: hbar = c = 1 with
// Gaussian electrodynamics, and energies measured in units of a reference
// transition energy hbar*omega_ref. With that choice
//
//   frequency  1  <->  omega_ref            (rad/s)
//   length     1  <->  c / omega_ref        (m)
//   energy     1  <->  hbar * omega_ref     (J)
//   force      1  <->  hbar * omega_ref^2 / c   (N)
//   |d|^2      1  <->  4 pi eps0 * hbar c * (c/omega_ref)^2   ((C m)^2)
//
// so the dimensionless arguments omega*R that drive the Green's functions are
// O(1) near the atomic resonances.
//
// Photon occupation numbers are obtained from spectral energy densities with
// the isotropic free-space mode density,
//
//   u(omega) = hbar omega^3 N(omega) / (pi^2 c^3),
//
// i.e. N(omega) = pi^2 c^3 u(omega) / (hbar omega^3). For a blackbody u(omega)
// is Planck's law and N is the Bose factor.
#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vdw {

/// CODATA 2018 values.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double c = 299792458.0;          // m / s
inline constexpr double k_B = 1.380649e-23;       // J / K
inline constexpr double e = 1.602176634e-19;      // C
inline constexpr double a0 = 5.29177210903e-11;   // m
inline constexpr double eps0 = 8.8541878128e-12;  // F / m
inline constexpr double ea0 = e * a0;             // C m, reference dipole
inline constexpr double pi = std::numbers::pi;
}  // namespace constants

enum class UnitMode { natural, si };

/// Angular frequency (rad/s) of a transition with the given energy in eV.
inline double ev_to_angular(double energy_ev) {
  if (!(energy_ev > 0.0))
    throw std::domain_error("ev_to_angular: energy must be positive");
  return energy_ev * constants::e / constants::hbar;
}

inline double angular_to_ev(double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("angular_to_ev: frequency must be positive");
  return omega * constants::hbar / constants::e;
}

/// Photon occupation number from a spectral energy density per unit angular
/// frequency (J s / m^3) at angular frequency omega (rad/s).
inline double spectral_density_to_occupation(double u_omega, double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("spectral_density_to_occupation: omega must be positive");
  if (u_omega < 0.0)
    throw std::domain_error("spectral_density_to_occupation: negative spectral density");
  using namespace constants;
  return pi * pi * c * c * c * u_omega / (hbar * omega * omega * omega);
}

/// Inverse of spectral_density_to_occupation.
inline double occupation_to_spectral_density(double occupation, double omega) {
  if (!(omega > 0.0))
    throw std::domain_error("occupation_to_spectral_density: omega must be positive");
  using namespace constants;
  return hbar * omega * omega * omega * occupation / (pi * pi * c * c * c);
}

/// Natural unit system anchored at a reference angular frequency (rad/s).
class UnitSystem {
 public:
  explicit UnitSystem(double omega_ref) : omega_ref_(omega_ref) {
    if (!(omega_ref > 0.0) || !std::isfinite(omega_ref))
      throw std::domain_error("UnitSystem: reference frequency must be positive");
  }

  static UnitSystem from_ev(double energy_ev) { return UnitSystem(ev_to_angular(energy_ev)); }

  double omega_ref() const { return omega_ref_; }

  double frequency_unit() const { return omega_ref_; }
  double length_unit() const { return constants::c / omega_ref_; }
  double energy_unit() const { return constants::hbar * omega_ref_; }
  double force_unit() const { return energy_unit() / length_unit(); }
  double temperature_unit() const { return energy_unit() / constants::k_B; }
  double dipole2_unit() const {
    using namespace constants;
    const double ell = length_unit();
    return 4.0 * pi * eps0 * hbar * c * ell * ell;
  }

  double frequency_to_natural(double rad_s) const { return rad_s / frequency_unit(); }
  double frequency_to_si(double w) const { return w * frequency_unit(); }
  double length_to_natural(double m) const { return m / length_unit(); }
  double length_to_si(double l) const { return l * length_unit(); }
  double energy_to_natural(double joule) const { return joule / energy_unit(); }
  double energy_to_si(double u) const { return u * energy_unit(); }
  double force_to_natural(double newton) const { return newton / force_unit(); }
  double force_to_si(double f) const { return f * force_unit(); }
  double temperature_to_natural(double kelvin) const { return kelvin / temperature_unit(); }
  double temperature_to_si(double t) const { return t * temperature_unit(); }
  /// |d|^2 in (C m)^2 to natural units.
  double dipole2_to_natural(double d2_si) const { return d2_si / dipole2_unit(); }
  double dipole2_to_si(double d2) const { return d2 * dipole2_unit(); }
  double ev_to_natural(double energy_ev) const { return frequency_to_natural(ev_to_angular(energy_ev)); }

 private:
  double omega_ref_;
};

/// Restores hbar and c on a force computed in natural units.
inline double force_natural_to_si(double f, const UnitSystem& units) { return units.force_to_si(f); }

inline double energy_natural_to_si(double u, const UnitSystem& units) { return units.energy_to_si(u); }

}  // namespace vdw
