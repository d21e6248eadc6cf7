// potentials.hpp - exact van der Waals potentials.
//
// Sign convention: D_r is the retarded photon Green's function in the
// Landau-Lifshitz sign, D_r = -G where G is the classical field response. For
// two atoms the scattered part seen by A is D_r = -alpha_B (D0 . D0), whose
// trace is -alpha_B * contracted_sq.
//
// The general potential of a prepared state of atom A,
//
//   U = -Re[(i/2pi) int_0^inf alpha_A(w) D11(w) dw] + Re[(|d_A|^2/3) D11(w_A)] p_e,
//
// is evaluated by splitting D11 = D_ret + i r with D_ret analytic in the upper
// half plane and r real. The D_ret piece is rotated onto the imaginary axis,
// where it is smooth and exponentially damped; only r, which has the compact or
// decaying support of the photon occupation, is integrated on the real axis.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vdw/atoms.hpp"
#include "vdw/fields.hpp"
#include "vdw/greens.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {

enum class Target { A, B };
enum class Regime { exact, short_asymptotic, long_asymptotic };

inline const char* to_string(Target t) { return t == Target::A ? "A" : "B"; }
inline const char* to_string(Regime r) {
  switch (r) {
    case Regime::exact: return "exact";
    case Regime::short_asymptotic: return "short_asymptotic";
    case Regime::long_asymptotic: return "long_asymptotic";
  }
  return "?";
}

struct PotentialBreakdown {
  double u_eq = 0.0;
  double u_neq = 0.0;
  Target atom_tag = Target::A;
  Regime regime = Regime::exact;
  double total() const { return u_eq + u_neq; }
};

class DegenerateResonanceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// -- environment providers ------------------------------------------------

/// Where the real-axis integrand lives and which features need breakpoints.
struct SpectralHints {
  std::vector<std::pair<double, double>> resonances;  // (center, width)
  std::vector<double> breakpoints;
  std::vector<std::pair<double, double>> support;  // r(w) vanishes outside these intervals
  double phase_rate = 0.0;                        // r oscillates like e^{i phase_rate w}
  std::vector<double> imag_scales;                // decay scales along the imaginary axis
};

/// Scattering part of the photon Green's function at the position of the atom,
/// already contracted with the isotropic dipole average.
class EnvironmentGreens {
 public:
  virtual ~EnvironmentGreens() = default;
  /// Part of D11 analytic in the upper half plane; also valid at w = i xi.
  virtual cplx retarded(cplx omega) const = 0;
  /// r(w) in D11 = D_ret + i r, for real w > 0.
  virtual double fluctuation(double omega) const = 0;
  virtual SpectralHints hints() const = 0;

  cplx d11(double omega) const { return retarded(cplx(omega, 0.0)) + cplx(0.0, fluctuation(omega)); }
};

/// Environment formed by a second atom B at distance R, in a photon field.
///
/// D11 = -alpha_B sq - 2iN Im(alpha_B sq) + 2i Im(alpha_B^g) [N p_g - (N+1) p_e] abs2,
///
/// with alpha_B = (p_g - p_e) alpha_B^g the population-weighted response. The
/// last term combines induced absorption, stimulated and spontaneous emission
/// of B; its spontaneous part is not weighted by N and is kept only inside
/// +-emission_window of w_B, beyond which the eta-Lorentzian is a regulator
/// artifact.
class TwoAtomScattered final : public EnvironmentGreens {
 public:
  TwoAtomScattered(TwoLevelAtom partner, PhotonField field, double R, double eta, double emission_window)
      : b_(std::move(partner)), field_(std::move(field)), R_(R), eta_(eta), window_(emission_window) {
    if (!(R > 0.0)) throw std::domain_error("TwoAtomScattered: R must be positive");
    if (!(eta > 0.0)) throw std::domain_error("TwoAtomScattered: eta must be positive");
    if (!(emission_window > eta)) throw std::domain_error("TwoAtomScattered: emission window must exceed eta");
    // The cut Lorentzian keeps only 2 atan(window/eta)/pi of its weight; restore the full delta weight.
    emission_norm_ = 0.5 * std::numbers::pi / std::atan(window_ / eta_);
  }

  cplx alpha_b(cplx omega) const { return polarizability_populated(b_, omega, eta_); }

  cplx retarded(cplx omega) const override { return -alpha_b(omega) * contracted_sq(omega, R_); }

  double fluctuation(double w) const override {
    const double n = field_.occupation(w);
    const cplx ag = polarizability(b_, AtomState::ground, w, eta_);
    double r = 0.0;
    if (n > 0.0) {
      // -2N Im(alpha_B sq) + 2N Im(alpha_B) abs2, regrouped so that the
      // short-range cancellation abs2 - Re sq is done analytically.
      const double weight = b_.p_g() - b_.p_e();
      r += 2.0 * n * weight *
           (ag.imag() * contracted_abs2_minus_re_sq(w, R_) - ag.real() * contracted_sq(w, R_).imag());
    }
    if (b_.p_e() > 0.0 && std::abs(w - b_.omega0()) <= window_)
      r += -2.0 * ag.imag() * b_.p_e() * contracted_abs2(w, R_) * emission_norm_;
    return r;
  }

  SpectralHints hints() const override {
    SpectralHints h;
    h.resonances.emplace_back(b_.omega0(), eta_);
    h.breakpoints = field_.breakpoints();
    // At low T the thermal cutoff can sit below w_B; the resonance must stay inside.
    if (!field_.is_vacuum())
      h.support.emplace_back(0.0, std::max(field_.upper_cutoff(), b_.omega0() + window_));
    if (b_.p_e() > 0.0) {
      h.support.emplace_back(std::max(0.0, b_.omega0() - window_), b_.omega0() + window_);
      h.breakpoints.push_back(b_.omega0() - window_);
      h.breakpoints.push_back(b_.omega0() + window_);
    }
    h.phase_rate = 2.0 * R_;
    h.imag_scales = {b_.omega0(), 1.0 / R_};
    return h;
  }

  double R() const { return R_; }
  double eta() const { return eta_; }
  const TwoLevelAtom& partner() const { return b_; }
  const PhotonField& field() const { return field_; }

 private:
  TwoLevelAtom b_;
  PhotonField field_;
  double R_, eta_, window_;
  double emission_norm_ = 1.0;
};

/// Atom at distance z from a perfectly conducting plane. The image dipole gives
/// D_r(w) = (2 e^{iwL}/L)(w^2 - 2/L^2 + 2iw/L), L = 2z, and the body radiates
/// with the field's occupation: D11 = D_r + 2iN Im D_r.
class PerfectMirror final : public EnvironmentGreens {
 public:
  PerfectMirror(double z, PhotonField field) : z_(z), field_(std::move(field)) {
    if (!(z > 0.0)) throw std::domain_error("PerfectMirror: distance must be positive");
  }

  cplx retarded(cplx w) const override {
    const double L = 2.0 * z_;
    const cplx i(0.0, 1.0);
    return 2.0 * std::exp(i * w * L) / L * (w * w - 2.0 / (L * L) + 2.0 * i * w / L);
  }

  double fluctuation(double w) const override {
    const double n = field_.occupation(w);
    return n > 0.0 ? 2.0 * n * retarded(cplx(w, 0.0)).imag() : 0.0;
  }

  SpectralHints hints() const override {
    SpectralHints h;
    h.breakpoints = field_.breakpoints();
    if (!field_.is_vacuum()) h.support.emplace_back(0.0, field_.upper_cutoff());
    h.phase_rate = 2.0 * z_;
    h.imag_scales = {1.0 / (2.0 * z_)};
    return h;
  }

 private:
  double z_;
  PhotonField field_;
};

/// Provider built from callables, for bodies not shipped with the library.
class UserSupplied final : public EnvironmentGreens {
 public:
  UserSupplied(std::function<cplx(cplx)> retarded, std::function<double(double)> fluctuation, SpectralHints hints)
      : ret_(std::move(retarded)), fl_(std::move(fluctuation)), hints_(std::move(hints)) {
    if (!ret_) throw std::invalid_argument("UserSupplied: retarded part is required");
  }
  cplx retarded(cplx w) const override { return ret_(w); }
  double fluctuation(double w) const override { return fl_ ? fl_(w) : 0.0; }
  SpectralHints hints() const override { return hints_; }

 private:
  std::function<cplx(cplx)> ret_;
  std::function<double(double)> fl_;
  SpectralHints hints_;
};

/// Default eta: 1e-6 w0, pushed lower when spectral features are narrower.
inline double default_eta(double omega_a, double omega_b, const PhotonField& field) {
  double eta = 1e-6 * std::min(omega_a, omega_b);
  eta = std::min(eta, 1e-4 * std::abs(omega_a - omega_b));
  eta = std::min(eta, 1e-3 * field.min_feature_width());
  return eta;
}

/// Provider for the partner of `target`, with the emission window kept clear of
/// the target resonance.
inline TwoAtomScattered make_two_atom_env(const TwoLevelAtom& target, const TwoLevelAtom& partner,
                                          const PhotonField& field, double R, double eta) {
  const double gap = std::abs(target.omega0() - partner.omega0());
  if (gap < 1e-12 * target.omega0())
    throw DegenerateResonanceError("two-atom environment: degenerate transition frequencies");
  const double window = std::min({1e4 * eta, 0.5 * gap, 0.5 * partner.omega0()});
  return TwoAtomScattered(partner, field, R, eta, window);
}

/// Scattered D11 of atom B seen by atom A.
inline cplx d11_scattered(double omega, double R, const TwoLevelAtom& atom_b, const PhotonField& field, double eta) {
  if (!(eta > 0.0)) throw std::domain_error("d11_scattered: eta must be positive");
  // The emission window is irrelevant for a point evaluation; make it cover all w.
  TwoAtomScattered env(atom_b, field, R, eta, std::numeric_limits<double>::max());
  return env.d11(omega);
}

// -- general formula --------------------------------------------------------

struct GeneralResult {
  double value = 0.0;
  double retarded_part = 0.0;
  double fluctuation_part = 0.0;
  double pole_part = 0.0;
  double error = 0.0;  // quadrature error estimate
  bool converged = true;
};

namespace detail {

// weight multiplies the dispersive response alpha_g; pole_weight multiplies the
// excited-state pole term. A pure state has (+-1, 0/1), a mixture (p_g - p_e, p_e).
inline GeneralResult u_general_weighted(const TwoLevelAtom& atom, double weight, double pole_weight,
                                        const EnvironmentGreens& env, double eta, const QuadratureSpec& q) {
  if (!(eta > 0.0)) throw std::domain_error("u_general: eta must be positive");
  const SpectralHints h = env.hints();
  const double w0 = atom.omega0();
  GeneralResult res;

  // Imaginary axis: (1/2pi) int_0^inf alpha(i xi) D_ret(i xi) d xi.
  {
    auto f = [&](double xi) {
      const cplx a = weight * polarizability(atom, AtomState::ground, cplx(0.0, xi), eta);
      return std::real(a * env.retarded(cplx(0.0, xi)));
    };
    std::vector<double> scales = h.imag_scales;
    scales.push_back(w0);
    double top = 0.0;
    std::vector<double> nodes;
    for (double s : scales) {
      if (!(s > 0.0) || !std::isfinite(s)) continue;
      for (int k = -8; k <= 8; ++k) nodes.push_back(s * std::pow(10.0, 0.5 * k));
      top = std::max(top, 1e4 * s);
    }
    nodes = clean_nodes(std::move(nodes), 0.0, top);
    QuadResult r = integrate_panels(f, nodes, q) + integrate_to_infinity(f, top, q);
    res.retarded_part = r.value / two_pi;
    res.error += r.error / two_pi;
    res.converged = res.converged && r.converged;
  }

  // Real axis: (1/2pi) int Re alpha(w) r(w) dw over the fluctuation support.
  {
    const auto support = merge_intervals(h.support);
    auto f = [&](double w) {
      const double a = weight * polarizability(atom, AtomState::ground, w, eta).real();
      return a * env.fluctuation(w);
    };
    for (const auto& [lo, hi] : support) {
      std::vector<double> nodes = h.breakpoints;
      add_resonance_ladder(nodes, w0, eta, lo, hi);
      for (const auto& [c, wdt] : h.resonances) add_resonance_ladder(nodes, c, wdt, lo, hi);
      if (h.phase_rate > 0.0) add_uniform(nodes, lo, hi, 2.0 * std::numbers::pi / h.phase_rate, q.max_nodes / 2);
      for (int k = -6; k <= 0; ++k) nodes.push_back(w0 * std::pow(10.0, 0.5 * k));
      nodes = clean_nodes(std::move(nodes), lo, hi);
      const QuadResult r = integrate_panels(f, nodes, q);
      res.fluctuation_part += r.value / two_pi;
      res.error += r.error / two_pi;
      res.converged = res.converged && r.converged;
    }
  }

  // Excited-state pole term, D11 taken at exactly w0.
  if (pole_weight != 0.0) res.pole_part = pole_weight * atom.d2() / 3.0 * env.d11(w0).real();

  res.value = res.retarded_part + res.fluctuation_part + res.pole_part;
  return res;
}

}  // namespace detail

/// Potential of `atom` prepared in `state` in environment `env` (general formula).
inline GeneralResult u_general_detailed(const TwoLevelAtom& atom, AtomState state, const EnvironmentGreens& env,
                                        double eta, const QuadratureSpec& q = {}) {
  return detail::u_general_weighted(atom, state_sign(state), state == AtomState::excited ? 1.0 : 0.0, env, eta, q);
}

inline double u_general(const TwoLevelAtom& atom, AtomState state, const EnvironmentGreens& env, double eta,
                        const QuadratureSpec& q = {}) {
  return u_general_detailed(atom, state, env, eta, q).value;
}

/// Population average p_g U_ground + p_e U_excited, in one pass.
inline GeneralResult u_general_populated(const TwoLevelAtom& atom, const EnvironmentGreens& env, double eta,
                                         const QuadratureSpec& q = {}) {
  return detail::u_general_weighted(atom, atom.p_g() - atom.p_e(), atom.p_e(), env, eta, q);
}

// -- two-atom closed forms --------------------------------------------------

/// Matsubara sum T sum'_m f(xi_m), m = 0 halved, with a midpoint-rule tail integral.
template <class F>
double matsubara_sum(F&& f, double T, double decay_scale, const QuadratureSpec& q = {}) {
  if (!(T > 0.0)) throw std::domain_error("matsubara_sum: T must be positive");
  const double step = two_pi * T;
  const double m_needed = std::max(64.0, std::ceil(40.0 * decay_scale / step));
  if (m_needed > 5e7) throw std::domain_error("matsubara_sum: temperature too low for a direct sum; use T = 0");
  const auto m_max = static_cast<long>(m_needed);
  double sum = 0.5 * f(0.0);
  long m = 1;
  for (; m <= m_max; ++m) {
    const double term = f(step * static_cast<double>(m));
    if (term == 0.0) break;  // exponential damping has underflowed
    sum += term;
  }
  if (m > m_max) {
    const double xi0 = step * (static_cast<double>(m_max) + 0.5);
    sum += integrate_to_infinity(f, xi0, q).value / step;
  }
  return T * sum;
}

/// Equilibrium potential of the pair (the same for both atoms). Uses the
/// population-weighted responses; T = 0 is the imaginary-frequency integral.
inline double u_eq_two_atom(const TwoLevelAtom& a, const TwoLevelAtom& b, double T, double R,
                            const QuadratureSpec& q = {}) {
  if (T < 0.0) throw std::domain_error("u_eq_two_atom: T must be non-negative");
  if (!(R > 0.0)) throw std::domain_error("u_eq_two_atom: R must be positive");
  auto f = [&](double xi) {
    return polarizability_imagfreq_populated(a, xi) * polarizability_imagfreq_populated(b, xi) *
           contracted_sq_imagfreq(xi, R);
  };
  const double scale = std::max(a.omega0(), b.omega0());
  if (T > 0.0) return -matsubara_sum(f, T, std::max(scale, 1.0 / R), q);
  std::vector<double> nodes;
  for (double s : {a.omega0(), b.omega0(), 1.0 / R})
    for (int k = -8; k <= 8; ++k) nodes.push_back(s * std::pow(10.0, 0.5 * k));
  const double top = 1e4 * std::max(scale, 1.0 / R);
  nodes = clean_nodes(std::move(nodes), 0.0, top);
  const QuadResult r = integrate_panels(f, nodes, q) + integrate_to_infinity(f, top, q);
  return -r.value / two_pi;
}

/// Same quantity from real frequencies: the T = 0 imaginary-axis integral plus
/// -(1/pi) int N(w) Im[alpha_A alpha_B sq] dw with eta-broadened responses.
/// Around each resonance the integration variable is the detuning itself, so
/// w - w0 is exact even when it is far below the rounding of w.
inline double u_eq_two_atom_real_axis(const TwoLevelAtom& a, const TwoLevelAtom& b, double T, double R, double eta,
                                      const QuadratureSpec& q = {}) {
  const double zero_t = u_eq_two_atom(a, b, 0.0, R, q);
  if (T == 0.0) return zero_t;
  if (!(eta > 0.0)) throw std::domain_error("u_eq_two_atom_real_axis: eta must be positive");
  const double wa = a.omega0(), wb = b.omega0();
  if (std::abs(wa - wb) <= 1e-12 * std::max(wa, wb))
    throw DegenerateResonanceError("u_eq_two_atom_real_axis: w_A = w_B");
  const PhotonField field = PhotonField::thermal(T);
  const cplx i(0.0, 1.0);
  // alpha for detuning delta = w - w0, population weighted.
  auto alpha = [&](const TwoLevelAtom& x, double w, double delta) {
    return (x.p_g() - x.p_e()) * x.d2() / 3.0 * (1.0 / (-delta - i * eta) + 1.0 / (x.omega0() + w + i * eta));
  };
  auto f = [&](double w, double da, double db) {
    const cplx prod = alpha(a, w, da) * alpha(b, w, db) * contracted_sq(w, R);
    return field.occupation(w) * prod.imag();
  };
  const double hi = field.upper_cutoff() + 2.0 * std::max(wa, wb);
  const double step = std::numbers::pi / R;
  const double h = 0.5 * std::min(std::abs(wa - wb), std::min(wa, wb));

  double total = 0.0;
  for (double c : {wa, wb}) {
    std::vector<double> nodes;
    add_resonance_ladder(nodes, 0.0, eta, -h, h);
    add_uniform(nodes, -h, h, step, q.max_nodes / 4);
    nodes = clean_nodes(std::move(nodes), -h, h);
    const double oa = c - wa, ob = c - wb;  // exact: one of them is zero
    total += integrate_panels([&](double t) { return f(c + t, oa + t, ob + t); }, nodes, q).value;
  }
  const double lo_c = std::min(wa, wb), hi_c = std::max(wa, wb);
  const std::pair<double, double> outside[] = {{0.0, lo_c - h}, {lo_c + h, hi_c - h}, {hi_c + h, hi}};
  for (const auto& [lo, up] : outside) {
    if (!(up > lo)) continue;
    std::vector<double> nodes;
    add_uniform(nodes, lo, up, step, q.max_nodes / 4);
    for (int k = -12; k <= 0; ++k) nodes.push_back(T * std::pow(10.0, 0.5 * k));
    nodes = clean_nodes(std::move(nodes), lo, up);
    total += integrate_panels([&](double w) { return f(w, w - wa, w - wb); }, nodes, q).value;
  }
  return zero_t - total / std::numbers::pi;
}

namespace detail {
inline void check_detuning(double wa, double wb) {
  if (std::abs(wa - wb) <= 1e-12 * std::max(wa, wb))
    throw DegenerateResonanceError("degenerate transition frequencies: the resonant formulas have a pole at w_A = w_B");
}
}  // namespace detail

/// Non-equilibrium resonant potential. Target A:
///   2|d_A|^2|d_B|^2 / (9(w_A^2 - w_B^2)) [w_A pf_B abs2(w_B) - w_B pf_A Re sq(w_A)];
/// target B is the same expression with the labels exchanged.
inline double u_neq_exact(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                          double R) {
  if (!(R > 0.0)) throw std::domain_error("u_neq_exact: R must be positive");
  const TwoLevelAtom& s = target == Target::A ? a : b;  // the atom whose shift is computed
  const TwoLevelAtom& o = target == Target::A ? b : a;
  const double ws = s.omega0(), wo = o.omega0();
  detail::check_detuning(ws, wo);
  const double pf_s = population_factor(s, field.occupation(ws));
  const double pf_o = population_factor(o, field.occupation(wo));
  const double pref = 2.0 * s.d2() * o.d2() / (9.0 * (ws * ws - wo * wo));
  return pref * (ws * pf_o * contracted_abs2(wo, R) - wo * pf_s * contracted_sq(ws, R).real());
}

/// Atom near a body: equilibrium part from the Matsubara sum over the retarded
/// scattering Green's function, non-equilibrium part from its value at w0.
inline PotentialBreakdown u_cp_body(const TwoLevelAtom& atom, const EnvironmentGreens& scatter,
                                    const PhotonField& field, double T, Target tag = Target::A,
                                    const QuadratureSpec& q = {}) {
  if (T < 0.0) throw std::domain_error("u_cp_body: T must be non-negative");
  auto f = [&](double xi) {
    return polarizability_imagfreq_populated(atom, xi) * std::real(scatter.retarded(cplx(0.0, xi)));
  };
  const SpectralHints h = scatter.hints();
  PotentialBreakdown out;
  out.atom_tag = tag;
  double scale = atom.omega0();
  for (double s : h.imag_scales) scale = std::max(scale, s);
  if (T > 0.0) {
    out.u_eq = matsubara_sum(f, T, scale, q);
  } else {
    std::vector<double> nodes;
    std::vector<double> scales = h.imag_scales;
    scales.push_back(atom.omega0());
    for (double s : scales)
      for (int k = -8; k <= 8; ++k) nodes.push_back(s * std::pow(10.0, 0.5 * k));
    nodes = clean_nodes(std::move(nodes), 0.0, 1e4 * scale);
    const QuadResult r = integrate_panels(f, nodes, q) + integrate_to_infinity(f, 1e4 * scale, q);
    out.u_eq = r.value / two_pi;
  }
  const double w0 = atom.omega0();
  const double pf = population_factor(atom, field.occupation(w0));
  out.u_neq = -(atom.d2() / 3.0) * scatter.retarded(cplx(w0, 0.0)).real() * pf;
  return out;
}

}  // namespace vdw
