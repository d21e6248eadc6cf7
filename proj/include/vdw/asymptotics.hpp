// asymptotics.hpp - short- and long-distance closed forms of the resonant
// non-equilibrium potentials and forces.
//
// Forces are projected on rho = (R_A - R_B)/R. Moving A along rho increases R,
// moving B along rho decreases it, so F_A = -dU_A/dR and F_B = +dU_B/dR.
//
// The functions refuse to run outside their regime; the intermediate region
// belongs to the exact module.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vdw/atoms.hpp"
#include "vdw/fields.hpp"
#include "vdw/potentials.hpp"

namespace vdw {

enum class RegimeTag { short_range, intermediate, long_range };

inline const char* to_string(RegimeTag r) {
  switch (r) {
    case RegimeTag::short_range: return "short";
    case RegimeTag::intermediate: return "intermediate";
    case RegimeTag::long_range: return "long";
  }
  return "?";
}

struct RegimeThresholds {
  double short_max = 0.1;  // both w R below this
  double long_min = 10.0;  // both w R above this
};

struct RegimeReport {
  double x_a, x_b;
  RegimeTag regime;
};

inline RegimeReport classify_regime(double omega_a, double omega_b, double R, RegimeThresholds t = {}) {
  if (!(R > 0.0)) throw std::domain_error("classify_regime: R must be positive");
  if (!(t.short_max > 0.0 && t.long_min > t.short_max)) throw std::invalid_argument("classify_regime: bad thresholds");
  const double xa = omega_a * R, xb = omega_b * R;
  RegimeTag tag = RegimeTag::intermediate;
  if (std::max(xa, xb) < t.short_max) tag = RegimeTag::short_range;
  else if (std::min(xa, xb) > t.long_min) tag = RegimeTag::long_range;
  return {xa, xb, tag};
}

class RegimeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require_regime(const TwoLevelAtom& a, const TwoLevelAtom& b, double R, RegimeTag want,
                           RegimeThresholds t, const char* who) {
  const auto rep = classify_regime(a.omega0(), b.omega0(), R, t);
  if (rep.regime != want)
    throw RegimeError(std::string(who) + ": outside the " + to_string(want) + "-distance regime (w_A R = " +
                      std::to_string(rep.x_a) + ", w_B R = " + std::to_string(rep.x_b) + ")");
}

inline void require_ground(const TwoLevelAtom& a, const TwoLevelAtom& b, const char* who) {
  if (a.p_e() != 0.0 || b.p_e() != 0.0) throw std::domain_error(std::string(who) + ": both atoms must be in the ground state");
}

struct Labels {
  const TwoLevelAtom& s;  // atom whose potential/force is computed
  const TwoLevelAtom& o;  // partner
};

inline Labels labels(Target t, const TwoLevelAtom& a, const TwoLevelAtom& b) {
  return t == Target::A ? Labels{a, b} : Labels{b, a};
}

/// Force sign relative to -dU/dR for each target.
inline double force_sign(Target t) { return t == Target::A ? -1.0 : 1.0; }

}  // namespace detail

/// Long range: 4|d_s|^2|d_o|^2 w_s w_o / (9R^2(w_s^2 - w_o^2)) {w_o^3 pf_o - w_s^3 pf_s cos(2 w_s R)}.
/// For target B this is the mirrored expression, i.e. the overall sign flips
/// when written with the (w_A^2 - w_B^2) denominator.
inline double u_neq_long(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                         double R, RegimeThresholds t = {}) {
  detail::require_regime(a, b, R, RegimeTag::long_range, t, "u_neq_long");
  detail::check_detuning(a.omega0(), b.omega0());
  const auto [s, o] = detail::labels(target, a, b);
  const double ws = s.omega0(), wo = o.omega0();
  const double pf_s = population_factor(s, field.occupation(ws));
  const double pf_o = population_factor(o, field.occupation(wo));
  const double pref = 4.0 * s.d2() * o.d2() * ws * wo / (9.0 * R * R * (ws * ws - wo * wo));
  return pref * (wo * wo * wo * pf_o - ws * ws * ws * pf_s * std::cos(2.0 * ws * R));
}

/// Short range: 4|d_A|^2|d_B|^2 [w_A pf_B - w_B pf_A] / (3R^6(w_A^2 - w_B^2)), equal for both atoms.
inline double u_neq_short(Target /*target*/, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                          double R, RegimeThresholds t = {}) {
  detail::require_regime(a, b, R, RegimeTag::short_range, t, "u_neq_short");
  detail::check_detuning(a.omega0(), b.omega0());
  const double wa = a.omega0(), wb = b.omega0();
  const double pf_a = population_factor(a, field.occupation(wa));
  const double pf_b = population_factor(b, field.occupation(wb));
  const double R6 = std::pow(R, 6);
  return 4.0 * a.d2() * b.d2() * (wa * pf_b - wb * pf_a) / (3.0 * R6 * (wa * wa - wb * wb));
}

/// -dU/dR of u_neq_short, signed per target. Any populations.
inline double f_neq_short(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                          double R, RegimeThresholds t = {}) {
  const double u = u_neq_short(target, a, b, field, R, t);
  return detail::force_sign(target) * (-6.0 * u / R);
}

/// Exact derivative of u_neq_long (all terms), signed per target. Any populations.
inline double f_neq_long(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                         double R, RegimeThresholds t = {}) {
  detail::require_regime(a, b, R, RegimeTag::long_range, t, "f_neq_long");
  detail::check_detuning(a.omega0(), b.omega0());
  const auto [s, o] = detail::labels(target, a, b);
  const double ws = s.omega0(), wo = o.omega0();
  const double pf_s = population_factor(s, field.occupation(ws));
  const double pf_o = population_factor(o, field.occupation(wo));
  const double c = 4.0 * s.d2() * o.d2() * ws * wo / (9.0 * (ws * ws - wo * wo));
  const double mono = wo * wo * wo * pf_o;
  const double osc = ws * ws * ws * pf_s;
  // U = c [mono - osc cos(2 ws R)] / R^2
  const double dU = c * (-2.0 * (mono - osc * std::cos(2.0 * ws * R)) / (R * R * R) +
                         2.0 * ws * osc * std::sin(2.0 * ws * R) / (R * R));
  return detail::force_sign(target) * dU;
}

/// Ground-state short-range force pair: F_A = -F_B = 8|d_A|^2|d_B|^2 [w_A N_B - w_B N_A] / (R^7 (w_A^2 - w_B^2)).
inline double f_short_ground(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                             double R, RegimeThresholds t = {}) {
  detail::require_regime(a, b, R, RegimeTag::short_range, t, "f_short_ground");
  detail::require_ground(a, b, "f_short_ground");
  detail::check_detuning(a.omega0(), b.omega0());
  const double wa = a.omega0(), wb = b.omega0();
  const double na = field.occupation(wa), nb = field.occupation(wb);
  const double fa = 8.0 * a.d2() * b.d2() * (wa * nb - wb * na) / (std::pow(R, 7) * (wa * wa - wb * wb));
  return target == Target::A ? fa : -fa;
}

/// Ground-state long-range force, leading oscillating term only:
/// F_A = -8|d_A|^2|d_B|^2 N(w_A) w_A^5 w_B sin(2 w_A R) / (9 R^2 (w_A^2 - w_B^2)),
/// F_B the same with (N, w^5, sine argument) taken at w_B.
inline double f_long_ground(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                            double R, RegimeThresholds t = {}) {
  detail::require_regime(a, b, R, RegimeTag::long_range, t, "f_long_ground");
  detail::require_ground(a, b, "f_long_ground");
  detail::check_detuning(a.omega0(), b.omega0());
  const double wa = a.omega0(), wb = b.omega0();
  const double pref = -8.0 * a.d2() * b.d2() / (9.0 * R * R * (wa * wa - wb * wb));
  if (target == Target::A) return pref * field.occupation(wa) * std::pow(wa, 5) * wb * std::sin(2.0 * wa * R);
  return pref * field.occupation(wb) * std::pow(wb, 5) * wa * std::sin(2.0 * wb * R);
}

/// Ground-state long-range potentials (u_neq_long with p_e = 0).
inline double u_ground_long(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                            double R, RegimeThresholds t = {}) {
  detail::require_ground(a, b, "u_ground_long");
  return u_neq_long(target, a, b, field, R, t);
}

/// Equilibrium force for R >> 1/T, from the static (m = 0) Matsubara term
/// -(T/2) alpha_A(0) alpha_B(0) 6/R^6: F_A = -F_B = -8T|d_A|^2|d_B|^2/(w_A w_B R^7) along rho.
inline double f_eq_long(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, double T, double R) {
  if (!(T > 0.0) || !(R > 0.0)) throw std::domain_error("f_eq_long: T and R must be positive");
  const double fa = -8.0 * T * a.d2() * b.d2() / (a.omega0() * b.omega0() * std::pow(R, 7));
  return target == Target::A ? fa : -fa;
}

}  // namespace vdw
