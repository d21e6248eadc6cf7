// forces.hpp - forces from the exact potentials by numerical differentiation.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "vdw/atoms.hpp"
#include "vdw/fields.hpp"
#include "vdw/potentials.hpp"

namespace vdw {

struct StepSpec {
  double rel_tol = 1e-6;    // agreement required between the last two Richardson levels
  double h_override = 0.0;  // > 0 replaces the automatic initial step
};

struct Derivative {
  double value = 0.0;
  double error = 0.0;
};

class DifferentiationError : public std::runtime_error {
 public:
  DifferentiationError(const std::string& what, double estimate) : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// Central differences at h, h/2, h/4 combined by Richardson extrapolation.
template <class F>
Derivative richardson_derivative(F&& f, double x, double h, double rel_tol = 1e-6) {
  if (!(h > 0.0)) throw std::domain_error("richardson_derivative: step must be positive");
  double d[3];
  double fmax = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double hk = h / static_cast<double>(1 << k);
    const double fp = f(x + hk), fm = f(x - hk);
    fmax = std::max({fmax, std::abs(fp), std::abs(fm)});
    d[k] = (fp - fm) / (2.0 * hk);
  }
  const double r1 = (4.0 * d[1] - d[0]) / 3.0;
  const double r2 = (4.0 * d[2] - d[1]) / 3.0;
  const double best = (16.0 * r2 - r1) / 15.0;
  const double err = std::abs(best - r2);
  // Cancellation floor: f is known to a few ulps, divided by the smallest step.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * fmax / (h / 4.0);
  if (!std::isfinite(best)) throw DifferentiationError("richardson_derivative: non-finite result", err);
  if (err > rel_tol * std::abs(best) + floor)
    throw DifferentiationError("richardson_derivative: no convergence (estimate " + std::to_string(err) + ")", err);
  return {best, std::max(err, floor)};
}

/// Default step: h <= min(1e-3 R, 1e-2 / (2 max(w_A, w_B))).
inline double default_force_step(const TwoLevelAtom& a, const TwoLevelAtom& b, double R) {
  return std::min(1e-3 * R, 1e-2 / (2.0 * std::max(a.omega0(), b.omega0())));
}

/// Potential on `target` from the closed forms: u_neq_exact plus, if T is given, u_eq_two_atom.
inline double potential_exact(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                              std::optional<double> T_for_eq, double R) {
  double u = u_neq_exact(target, a, b, field, R);
  if (T_for_eq) u += u_eq_two_atom(a, b, *T_for_eq, R);
  return u;
}

/// Force on `target` projected on rho: F_A = -dU_A/dR, F_B = +dU_B/dR.
inline Derivative force_exact(Target target, const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                              std::optional<double> T_for_eq, double R, StepSpec step = {}) {
  if (!(R > 0.0)) throw std::domain_error("force_exact: R must be positive");
  const double h = step.h_override > 0.0 ? step.h_override : default_force_step(a, b, R);
  if (!(h < R)) throw std::domain_error("force_exact: step does not fit inside (0, R)");
  auto u = [&](double r) { return potential_exact(target, a, b, field, T_for_eq, r); };
  Derivative d = richardson_derivative(u, R, h, step.rel_tol);
  d.value *= target == Target::A ? -1.0 : 1.0;
  return d;
}

struct ForcePair {
  Eigen::Vector3d f_a = Eigen::Vector3d::Zero();
  Eigen::Vector3d f_b = Eigen::Vector3d::Zero();
  double f_a_rho = 0.0;
  double f_b_rho = 0.0;
  double f_net_rho = 0.0;  // (F_A + F_B)/2 projected on rho
  double R = 0.0;
  double err_a = 0.0, err_b = 0.0;
};

inline double net_force(const ForcePair& p) { return 0.5 * (p.f_a_rho + p.f_b_rho); }

/// Builds the pair for atoms at r_a and r_b; rho = (r_a - r_b)/R.
inline ForcePair make_force_pair(double f_a_rho, double f_b_rho, const Eigen::Vector3d& rho_hat, double R) {
  ForcePair p;
  p.R = R;
  p.f_a_rho = f_a_rho;
  p.f_b_rho = f_b_rho;
  p.f_a = f_a_rho * rho_hat;
  p.f_b = f_b_rho * rho_hat;
  p.f_net_rho = net_force(p);
  return p;
}

inline ForcePair force_pair_exact(const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                                  std::optional<double> T_for_eq, const Eigen::Vector3d& r_a,
                                  const Eigen::Vector3d& r_b, StepSpec step = {}) {
  const Eigen::Vector3d sep = r_a - r_b;
  const double R = sep.norm();
  if (!(R > 0.0)) throw std::domain_error("force_pair_exact: coincident atoms");
  const Derivative fa = force_exact(Target::A, a, b, field, T_for_eq, R, step);
  const Derivative fb = force_exact(Target::B, a, b, field, T_for_eq, R, step);
  ForcePair p = make_force_pair(fa.value, fb.value, sep / R, R);
  p.err_a = fa.error;
  p.err_b = fb.error;
  return p;
}

inline ForcePair force_pair_exact(const TwoLevelAtom& a, const TwoLevelAtom& b, const PhotonField& field,
                                  std::optional<double> T_for_eq, double R, StepSpec step = {}) {
  return force_pair_exact(a, b, field, T_for_eq, Eigen::Vector3d(0.0, 0.0, R), Eigen::Vector3d::Zero(), step);
}

}  // namespace vdw
