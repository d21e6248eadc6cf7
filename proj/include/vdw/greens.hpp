// greens.hpp - free-space retarded photon Green's tensor and its contractions.
//
// Convention: the retarded tensor in Gaussian units with hbar = c = 1,
//
//   D^{vv'}(w, r) = e^{iwR}/R [ w^2 (d_vv' - n_v n_v') + (3 n_v n_v' - d_vv')(1/R^2 - iw/R) ],
//
// normalized so that sum |D^{vv'}|^2 = (2w^4/R^2)(1 + x^-2 + 3 x^-4), x = wR.
//
// The two contractions that survive isotropic averaging are written here as
// polynomials in x, which stay exact for x -> 0 where the Laurent form would
// cancel catastrophically:
//
//   abs2 = (2/R^6)(x^4 + x^2 + 3)
//   sq   = (2/R^6) e^{2ix} (x^4 + 2i x^3 - 5x^2 - 6i x + 3)
//
// Re sq has cosine bracket (1 - 5/x^2 + 3/x^4) and sine bracket 2(3/x^3 - 1/x).
// The sine coefficient is twice the one sometimes quoted; the tensor
// contraction in tests/test_greens.cpp settles it.
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace vdw {

using cplx = std::complex<double>;
using Tensor3 = Eigen::Matrix3cd;
using Vec3 = Eigen::Vector3d;

/// Full 3x3 tensor at (possibly complex) frequency.
inline Tensor3 dyadic_green(cplx omega, const Vec3& r) {
  const double R = r.norm();
  if (!(R > 0.0)) throw std::domain_error("dyadic_green: zero separation");
  const Vec3 n = r / R;
  const Eigen::Matrix3d nn = n * n.transpose();
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  const cplx i(0.0, 1.0);
  const cplx pref = std::exp(i * omega * R) / R;
  const cplx near = 1.0 / (R * R) - i * omega / R;
  return pref * (omega * omega * (I - nn).cast<cplx>() + near * (3.0 * nn - I).cast<cplx>());
}

inline Tensor3 dyadic_green(double omega, const Vec3& r) {
  if (!(omega > 0.0)) throw std::domain_error("dyadic_green: omega must be positive");
  return dyadic_green(cplx(omega, 0.0), r);
}

/// sum_{vv'} |D^{vv'}|^2.
inline double contracted_abs2(double omega, double R) {
  if (!(omega > 0.0) || !(R > 0.0)) throw std::domain_error("contracted_abs2: omega and R must be positive");
  const double x2 = omega * omega * R * R;
  const double R6 = R * R * R * R * R * R;
  return 2.0 / R6 * (x2 * x2 + x2 + 3.0);
}

/// sum_{vv'} D^{vv'} D^{v'v} at complex frequency. Analytic in the upper half plane.
inline cplx contracted_sq(cplx omega, double R) {
  if (!(R > 0.0)) throw std::domain_error("contracted_sq: R must be positive");
  const cplx i(0.0, 1.0);
  const cplx x = omega * R;
  const cplx x2 = x * x;
  const double R6 = R * R * R * R * R * R;
  const cplx poly = x2 * x2 + 2.0 * i * x2 * x - 5.0 * x2 - 6.0 * i * x + 3.0;
  return 2.0 / R6 * std::exp(2.0 * i * x) * poly;
}

namespace detail {

// Taylor coefficients in x^2 of (x^4 + x^2 + 3 - Re P)/x^6 and Im P / x^5, with
// P = e^{2ix}(x^4 + 2ix^3 - 5x^2 - 6ix + 3). Both are O(x^5..6) differences of
// O(1) terms, so below x = 1 they are summed from the series instead.
inline constexpr double gap_series[] = {
    1.3333333333333333,     -0.44444444444444442,   0.06222222222222222,    -0.0046560846560846558,
    0.00021499958007894517, -6.7187368774670366e-06, 1.5139344945341417e-07, -2.5754287952994594e-09,
    3.4244753456792929e-11, -3.6569530770030587e-13, 3.2053356378755228e-15, -2.3474693185516483e-17,
    1.4580062602987451e-19, -7.7772073063439506e-22, 3.601523533497715e-24,  -1.4615620252056843e-26};
inline constexpr double im_series[] = {
    1.4666666666666666,     -0.87619047619047619,   0.18201058201058201,    -0.018213884880551548,
    0.0010557343890677225,  -3.9729817507595288e-05, 1.0472864503365593e-06, -2.0403447271270425e-08,
    3.0570075352120723e-10, -3.6318054404930555e-12, 3.5050938010458776e-14, -2.8025944249141063e-16,
    1.886962000173828e-18,  -1.084535778249874e-20,  5.3834750842685604e-23, -2.3312281459047142e-25};

template <std::size_t N>
double horner_x2(const double (&c)[N], double x2) {
  double acc = 0.0;
  for (std::size_t k = N; k-- > 0;) acc = acc * x2 + c[k];
  return acc;
}

/// Returns (x^4 + x^2 + 3 - Re P, Im P) accurately for all x >= 0.
inline std::pair<double, double> sq_pieces(double x) {
  const double x2 = x * x;
  if (x < 1.0) {
    const double x5 = x2 * x2 * x;
    return {x5 * x * horner_x2(gap_series, x2), x5 * horner_x2(im_series, x2)};
  }
  const double c = std::cos(2.0 * x), s = std::sin(2.0 * x);
  const double even = x2 * x2 - 5.0 * x2 + 3.0;  // real coefficient of P before the phase
  const double odd = 2.0 * x2 * x - 6.0 * x;     // imaginary coefficient
  const double re = c * even - s * odd;
  const double im = s * even + c * odd;
  return {x2 * x2 + x2 + 3.0 - re, im};
}

}  // namespace detail

/// Real-frequency contraction; real and imaginary parts are evaluated without
/// cancellation at small wR.
inline cplx contracted_sq(double omega, double R) {
  if (!(omega > 0.0) || !(R > 0.0)) throw std::domain_error("contracted_sq: omega and R must be positive");
  const double x = omega * R;
  const double R6 = R * R * R * R * R * R;
  const auto [gap, im] = detail::sq_pieces(x);
  const double x2 = x * x;
  return 2.0 / R6 * cplx(x2 * x2 + x2 + 3.0 - gap, im);
}

/// abs2 - Re sq, which is O((wR)^6) relative at short range.
inline double contracted_abs2_minus_re_sq(double omega, double R) {
  if (!(omega > 0.0) || !(R > 0.0)) throw std::domain_error("contracted_abs2_minus_re_sq: omega and R must be positive");
  const double R6 = R * R * R * R * R * R;
  return 2.0 / R6 * detail::sq_pieces(omega * R).first;
}

/// contracted_sq continued to omega = i xi; real, y = xi R:
/// (2/R^6) e^{-2y} (y^4 + 2y^3 + 5y^2 + 6y + 3), tending to 6/R^6 as xi -> 0.
inline double contracted_sq_imagfreq(double xi, double R) {
  if (xi < 0.0 || !(R > 0.0)) throw std::domain_error("contracted_sq_imagfreq: need xi >= 0, R > 0");
  const double y = xi * R;
  if (y > 400.0) return 0.0;  // e^{-800} underflows; avoids inf*0 for huge y
  const double R6 = R * R * R * R * R * R;
  const double poly = (((y + 2.0) * y + 5.0) * y + 6.0) * y + 3.0;
  return 2.0 / R6 * std::exp(-2.0 * y) * poly;
}

/// Tensor contractions computed directly from dyadic_green; used as the oracle.
struct GreenContractions {
  double abs2;
  cplx sq;
};

inline GreenContractions contract(const Tensor3& D) {
  GreenContractions c{0.0, 0.0};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      c.abs2 += std::norm(D(a, b));
      c.sq += D(a, b) * D(b, a);
    }
  return c;
}

}  // namespace vdw
