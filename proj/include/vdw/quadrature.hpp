// quadrature.hpp - panel quadrature for integrands with narrow resonances.
//
// The frequency integrals carry Lorentzians and principal-value poles of width
// eta sitting on an O(1) background. Each is handled by explicit breakpoints:
// a geometric ladder center +- eta*10^(k/2) that is symmetric about the pole,
// so the principal-value halves cancel panel by panel.
//
// Panels are refined globally (largest error first) with the 61-point
// Gauss-Kronrod rule. The node and weight tables come from boost; the adaptive
// driver is our own because boost 1.74 compares an unscaled [-1,1] error
// estimate against a width-scaled tolerance, which never converges on narrow
// panels.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace vdw {

struct QuadratureSpec {
  double rel_tol = 1e-10;            // target relative to |value|
  double l1_floor = 1e-14;           // ... or relative to int |f| when the value cancels
  std::size_t max_evals = 4000000;   // across all panels of one call
  std::size_t max_nodes = 200000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // sum of panel error estimates
  double l1 = 0.0;     // integral of |f|, measures cancellation
  std::size_t panels = 0;
  std::size_t evals = 0;
  bool converged = true;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

namespace detail {

struct Panel {
  double a, b, value, error, l1;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
Panel gk61(F& f, double a, double b) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
  using G = boost::math::quadrature::gauss<double, 30>;
  const auto& x = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = G::weights();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  // 30-point Gauss has no centre node; its nodes are the odd Kronrod abscissae.
  const double f0 = f(c);
  double k = f0 * wk[0], g = 0.0, l1 = std::abs(f0) * wk[0];
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double fp = f(c + h * x[i]), fm = f(c - h * x[i]);
    k += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 1) g += (fp + fm) * wg[i / 2];
  }
  const double err = std::max(std::abs(k - g), 50.0 * std::numeric_limits<double>::epsilon() * l1);
  return {a, b, h * k, h * err, h * l1};
}

}  // namespace detail

/// Sorted, de-duplicated node list restricted to [lo, hi], always containing both ends.
inline std::vector<double> clean_nodes(std::vector<double> nodes, double lo, double hi) {
  nodes.push_back(lo);
  nodes.push_back(hi);
  std::vector<double> out;
  out.reserve(nodes.size());
  for (double x : nodes)
    if (std::isfinite(x) && x >= lo && x <= hi) out.push_back(x);
  std::sort(out.begin(), out.end());
  const double tiny = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi));
  std::vector<double> uniq;
  for (double x : out)
    if (uniq.empty() || x - uniq.back() > tiny) uniq.push_back(x);
  if (uniq.back() < hi) uniq.back() = hi;
  return uniq;
}

/// Breakpoints center +- width * 10^(k/2), k = 0..2*decades, kept inside [lo, hi].
inline void add_resonance_ladder(std::vector<double>& nodes, double center, double width, double lo, double hi,
                                 int decades = 14) {
  if (!(width > 0.0)) return;
  nodes.push_back(center);
  for (int k = 0; k <= 2 * decades; ++k) {
    const double d = width * std::pow(10.0, 0.5 * k);
    if (center - d > lo) nodes.push_back(center - d);
    if (center + d < hi) nodes.push_back(center + d);
    if (center - d <= lo && center + d >= hi) break;
  }
}

/// Uniform subdivision with spacing at most `step` (for oscillatory stretches).
inline void add_uniform(std::vector<double>& nodes, double lo, double hi, double step, std::size_t cap) {
  if (!(step > 0.0) || !(hi > lo)) return;
  const double n = std::ceil((hi - lo) / step);
  if (n > static_cast<double>(cap)) throw QuadratureError("quadrature: oscillatory range needs too many panels", 0.0);
  const auto count = static_cast<std::size_t>(n);
  for (std::size_t i = 1; i < count; ++i)
    nodes.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count));
}

/// Integral over [nodes.front(), nodes.back()], never straddling a node.
template <class F>
QuadResult integrate_panels(F&& f, const std::vector<double>& nodes, const QuadratureSpec& spec = {}) {
  QuadResult r;
  if (nodes.size() > spec.max_nodes) throw QuadratureError("quadrature: too many panels", 0.0);
  std::priority_queue<detail::Panel> heap;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    if (!(nodes[i + 1] > nodes[i])) continue;
    const auto p = detail::gk61(f, nodes[i], nodes[i + 1]);
    r.value += p.value;
    r.error += p.error;
    r.l1 += p.l1;
    r.evals += 61;
    heap.push(p);
  }
  auto target = [&] { return std::max(spec.rel_tol * std::abs(r.value), spec.l1_floor * r.l1); };
  while (!heap.empty() && r.error > target()) {
    if (r.evals + 122 > spec.max_evals) {
      r.converged = false;
      break;
    }
    const detail::Panel p = heap.top();
    const double m = 0.5 * (p.a + p.b);
    if (!(m > p.a && m < p.b)) {  // cannot split further in double precision
      r.converged = false;
      break;
    }
    heap.pop();
    const auto left = detail::gk61(f, p.a, m);
    const auto right = detail::gk61(f, m, p.b);
    r.value += left.value + right.value - p.value;
    r.error += left.error + right.error - p.error;
    r.l1 += left.l1 + right.l1 - p.l1;
    r.evals += 122;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the incremental updates.
  r.value = r.error = r.l1 = 0.0;
  r.panels = heap.size();
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.error += heap.top().error;
    r.l1 += heap.top().l1;
    heap.pop();
  }
  if (!std::isfinite(r.value)) throw QuadratureError("quadrature: non-finite integrand", r.error);
  return r;
}

/// Integral over [a, inf) via x = a + t/(1-t), t in [0, 1).
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, const QuadratureSpec& spec = {}) {
  auto g = [&](double t) {
    if (t >= 1.0) return 0.0;
    const double s = 1.0 - t;
    const double v = f(a + t / s);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  std::vector<double> nodes{0.0, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0};
  return integrate_panels(g, nodes, spec);
}

inline QuadResult operator+(QuadResult a, const QuadResult& b) {
  a.value += b.value;
  a.error += b.error;
  a.l1 += b.l1;
  a.panels += b.panels;
  a.evals += b.evals;
  a.converged = a.converged && b.converged;
  return a;
}

/// Merges possibly overlapping intervals.
inline std::vector<std::pair<double, double>> merge_intervals(std::vector<std::pair<double, double>> iv) {
  std::sort(iv.begin(), iv.end());
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : iv) {
    if (!(b > a)) continue;
    if (!out.empty() && a <= out.back().second) out.back().second = std::max(out.back().second, b);
    else out.emplace_back(a, b);
  }
  return out;
}

}  // namespace vdw
