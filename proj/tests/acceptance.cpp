// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned here.
// Exit status is non-zero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "vdw/asymptotics.hpp"
#include "vdw/forces.hpp"
#include "vdw/greens.hpp"
#include "vdw/manifest.hpp"
#include "vdw/potentials.hpp"
#include "vdw/sweep.hpp"

using namespace vdw;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLambda = 2.0 * kPi;  // 2 pi c / w_A in natural units

// Pinned tolerances.
constexpr double kAc1Rel = 1e-12;
constexpr double kAc2Rel = 1e-12;
constexpr double kAc3Rel = 1e-2;
constexpr double kAc4Rel = 1e-3;
constexpr double kAc5Slope = 0.05;
constexpr double kAc6Rel = 1e-10;
constexpr double kAc6Share = 0.95;
constexpr double kAc7Factor = 3.0;
constexpr double kAc7Target = 1e-23;  // N
constexpr double kAc8Linear = 1e-6;
constexpr double kAc8Orders = 6.0;
constexpr int kAc10Changes = 3;

// Runtime budgets in seconds.
constexpr double kBudget[12] = {0, 1, 1, 10, 120, 30, 60, 60, 60, 60, 60, 300};

int failures = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

void run(int id, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = dt < kBudget[id];
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("AC%-2d %s  %s [%.2f s, budget %.0f s%s]\n", id, pass ? "PASS" : "FAIL", o.detail.c_str(), dt, kBudget[id],
              in_time ? "" : ", over budget");
  std::fflush(stdout);
}

__attribute__((format(printf, 1, 2))) void info(const char* f, ...) {
  std::va_list ap;
  va_start(ap, f);
  std::printf("     info: ");
  std::vprintf(f, ap);
  std::printf("\n");
  va_end(ap);
}

__attribute__((format(printf, 1, 2))) std::string fmt(const char* f, ...) {
  char buf[1024];
  std::va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

SweepConfig preset(const std::string& name) { return load_config(std::string(VDW_PRESET_DIR) + "/" + name + ".yaml"); }

std::vector<double> column(const SweepTable& t, const std::string& name) {
  std::size_t k = 0;
  while (k < t.columns.size() && t.columns[k].name != name) ++k;
  if (k == t.columns.size()) throw std::runtime_error("missing column " + name);
  std::vector<double> v;
  for (const auto& row : t.rows) v.push_back(row[k].empty() ? std::nan("") : std::stod(row[k]));
  return v;
}

int sign_changes(const std::vector<double>& v) {
  int n = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if ((v[i] > 0) != (v[i - 1] > 0) && v[i] != 0.0 && v[i - 1] != 0.0) ++n;
  return n;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Least-squares slope of log|y| against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// Rb-87 / K-40 D2 lines in units of w_A.
const UnitSystem kUnits = UnitSystem::from_ev(1.59);
const TwoLevelAtom kRb = find_atom_preset("Rb87_D2").to_atom(kUnits);
const TwoLevelAtom kK = find_atom_preset("K40_D2").to_atom(kUnits);

Outcome ac1() {
  const Vec3 dir = Vec3(0.3, -0.5, 0.81).normalized();
  double worst_abs2 = 0.0, worst_sq = 0.0;
  const double R = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double x = 1e-2 * std::pow(1e4, i / 199.0);
    const auto c = contract(dyadic_green(x / R, R * dir));
    worst_abs2 = std::max(worst_abs2, std::abs(contracted_abs2(x / R, R) / c.abs2 - 1.0));
    worst_sq = std::max(worst_sq, std::abs(contracted_sq(x / R, R) - c.sq) / std::abs(c.sq));
  }
  // Sine bracket of Re sq: fit the coefficient of sin(2x) after removing the cosine part.
  double ratio_sum = 0.0;
  int n = 0;
  for (double x : {0.7, 1.9, 4.2, 13.0}) {
    if (std::abs(std::sin(2 * x)) < 0.2) continue;
    const double pref = 2.0 * std::pow(x, 4);
    const double re = contract(dyadic_green(x, Vec3(0, 0, 1))).sq.real();
    const double cosb = 1.0 - 5.0 / (x * x) + 3.0 / std::pow(x, 4);
    const double sin_coeff = (re / pref - cosb * std::cos(2 * x)) / std::sin(2 * x);
    ratio_sum += sin_coeff / (3.0 / std::pow(x, 3) - 1.0 / x);
    ++n;
  }
  const double factor = ratio_sum / n;
  info("tensor sine bracket / printed sine bracket (3/x^3 - 1/x) = %.12f; the closed form uses the tensor value", factor);
  const bool pass = worst_abs2 < kAc1Rel && worst_sq < kAc1Rel;
  return {pass, fmt("contracted_abs2 max rel err %.2e, contracted_sq max rel err %.2e (tol %.0e)", worst_abs2, worst_sq,
                    kAc1Rel)};
}

Outcome ac2() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> lw(-0.3, 0.3), lr(-2.5, 2.5), lt(-1.0, 1.0);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const double wa = std::pow(10.0, lw(rng)), wb = std::pow(10.0, lw(rng));
    if (std::abs(wa - wb) < 1e-3) continue;
    const double T = std::pow(10.0, lt(rng)), R = std::pow(10.0, lr(rng)) / wa;
    const TwoLevelAtom a(wa, 0.3, boltzmann_populations(wa, T)), b(wb, 0.2, boltzmann_populations(wb, T));
    const PhotonField f = PhotonField::thermal(T);
    // Resonant scale: one population-factor unit of either term of the closed form.
    const double c = 2.0 * a.d2() * b.d2() / (9.0 * std::abs(wa * wa - wb * wb));
    const double scale = c * std::max({wa * contracted_abs2(wb, R), wb * std::abs(contracted_sq(wa, R)),
                                       wb * contracted_abs2(wa, R), wa * std::abs(contracted_sq(wb, R))}) *
                         std::max({1.0, f.occupation(wa), f.occupation(wb)});
    for (Target t : {Target::A, Target::B}) worst = std::max(worst, std::abs(u_neq_exact(t, a, b, f, R)) / scale);
    ++done;
  }
  return {worst < kAc2Rel, fmt("max |U_neq| / resonant scale over 100 random tuples: %.2e (tol %.0e)", worst, kAc2Rel)};
}

Outcome ac3() {
  struct Case {
    const char* name;
    TwoLevelAtom a, b;
    PhotonField field;
  };
  const std::vector<Case> cases = {
      {"ground/ground, thermal T = w_A", kRb, kK, PhotonField::thermal(1.0)},
      {"excited/ground, vacuum", kRb.in_state(AtomState::excited), kK, PhotonField::vacuum()},
      {"Boltzmann(T = w_A/2) atoms, thermal T = w_A", kRb.with_populations(boltzmann_populations(1.0, 0.5)),
       kK.with_populations(boltzmann_populations(kK.omega0(), 0.5)), PhotonField::thermal(1.0)},
  };
  double worst_short = 0.0, worst_long = 0.0, worst_long_env = 0.0;
  for (const auto& c : cases) {
    for (Target t : {Target::A, Target::B}) {
      const double rs = 0.01, rl = 100.0;
      const double es = u_neq_exact(t, c.a, c.b, c.field, rs), as = u_neq_short(t, c.a, c.b, c.field, rs);
      const double el = u_neq_exact(t, c.a, c.b, c.field, rl), al = u_neq_long(t, c.a, c.b, c.field, rl);
      const double short_err = std::abs(es / as - 1.0), long_err = std::abs(el / al - 1.0);
      // Envelope of the long form: both terms with |cos| = 1.
      const auto& s = t == Target::A ? c.a : c.b;
      const auto& o = t == Target::A ? c.b : c.a;
      const double ws = s.omega0(), wo = o.omega0();
      const double env = 4.0 * s.d2() * o.d2() * ws * wo / (9.0 * rl * rl * std::abs(ws * ws - wo * wo)) *
                         (std::abs(wo * wo * wo * population_factor(o, c.field.occupation(wo))) +
                          std::abs(ws * ws * ws * population_factor(s, c.field.occupation(ws))));
      const double env_err = std::abs(el - al) / env;
      worst_short = std::max(worst_short, short_err);
      worst_long = std::max(worst_long, long_err);
      worst_long_env = std::max(worst_long_env, env_err);
      std::printf("     info: %-46s %s  w_A R = 0.01: rel err %.2e   w_A R = 100: rel err %.2e (%.2e of envelope)\n",
                  c.name, t == Target::A ? "U_A" : "U_B", short_err, long_err, env_err);
    }
  }
  const bool pass = worst_short < kAc3Rel && worst_long < kAc3Rel;
  return {pass, fmt("max rel err short %.2e, long %.2e (tol %.0e); long-range error is O(1/(w R)) from the "
                    "sine-bracket term the leading form drops",
                    worst_short, worst_long, kAc3Rel)};
}

Outcome ac4() {
  struct Case {
    const char* name;
    TwoLevelAtom a, b;
    PhotonField field;
    double T;
    std::vector<double> x;  // w_A R
  };
  const double Tb = 0.5;
  const std::vector<Case> cases = {
      {"ground/ground thermal", kRb, kK, PhotonField::thermal(1.0), 1.0, {0.01, 0.1, 1.0, 10.0, 100.0}},
      {"excited/ground vacuum", kRb.in_state(AtomState::excited), kK, PhotonField::vacuum(), 0.0,
       {0.01, 0.1, 1.0, 10.0, 100.0}},
      {"ground/excited vacuum", kRb, kK.in_state(AtomState::excited), PhotonField::vacuum(), 0.0,
       {0.01, 0.1, 1.0, 10.0, 100.0}},
      {"Boltzmann/thermal", kRb.with_populations(boltzmann_populations(1.0, Tb)),
       kK.with_populations(boltzmann_populations(kK.omega0(), Tb)), PhotonField::thermal(Tb), Tb,
       {0.01, 0.03, 0.1, 0.3, 1.0}},
  };
  double worst = 0.0;
  int points = 0;
  for (const auto& c : cases) {
    double case_worst = 0.0;
    for (double R : c.x) {
      const double eta = default_eta(c.a.omega0(), c.b.omega0(), c.field);
      const double general = u_general_populated(c.a, make_two_atom_env(c.a, c.b, c.field, R, eta), eta).value;
      const double closed = u_eq_two_atom(c.a, c.b, c.T, R) + u_neq_exact(Target::A, c.a, c.b, c.field, R);
      case_worst = std::max(case_worst, std::abs(general / closed - 1.0));
      ++points;
    }
    info("%-24s worst rel err %.2e over w_A R in [%g, %g]", c.name, case_worst, c.x.front(), c.x.back());
    worst = std::max(worst, case_worst);
  }
  return {worst < kAc4Rel, fmt("%d points, max rel err %.2e (tol %.0e)", points, worst, kAc4Rel)};
}

Outcome ac5() {
  const PhotonField f = PhotonField::thermal(1.0);
  std::vector<double> rs, fs;
  for (int i = 0; i < 10; ++i) {
    const double R = 1e-3 * std::pow(10.0, i / 9.0);
    rs.push_back(R);
    fs.push_back(force_exact(Target::A, kRb, kK, f, std::nullopt, R).value);
  }
  const double short_slope = loglog_slope(rs, fs);
  // Long range: sample F_A at the extrema of sin(2 w_A R), 10 to 100 lambda.
  std::vector<double> rl, fl;
  for (int i = 0; i < 10; ++i) {
    const double R0 = 10.0 * kLambda * std::pow(10.0, i / 9.0);
    const double R = (std::round(2.0 * R0 / kPi) + 0.5) * kPi / 2.0;
    rl.push_back(R);
    fl.push_back(force_exact(Target::A, kRb, kK, f, std::nullopt, R).value);
  }
  const double long_slope = loglog_slope(rl, fl);
  const bool pass = std::abs(short_slope + 7.0) < kAc5Slope && std::abs(long_slope + 2.0) < kAc5Slope;
  return {pass, fmt("short-range slope %.4f (want -7), long-range envelope slope %.4f (want -2), tol %.2f", short_slope,
                    long_slope, kAc5Slope)};
}

Outcome ac6() {
  const PhotonField f = PhotonField::thermal(1.0);
  // Short regime: exact forces at w_A R in [1e-3, 3e-2].
  double worst_exact = 0.0;
  for (double x : {1e-3, 3e-3, 1e-2, 3e-2}) {
    const ForcePair p = force_pair_exact(kRb, kK, f, std::nullopt, x);
    worst_exact = std::max(worst_exact, std::abs(p.f_a_rho + p.f_b_rho) / std::abs(p.f_a_rho));
  }
  // Long regime, thermal T = w_A, w_B = w_A + 1e-4.
  const TwoLevelAtom b(1.0001, kK.d2());
  int share = 0, total = 0;
  for (int i = 0; i < 400; ++i) {
    const double R = (10.0 + 20.0 * i / 399.0) * kLambda;
    const ForcePair p = force_pair_exact(kRb, b, f, std::nullopt, R);
    ++total;
    if ((p.f_a_rho > 0) == (p.f_b_rho > 0)) ++share;
  }
  const double frac = static_cast<double>(share) / total;
  const bool pass = worst_exact < kAc6Rel && frac >= kAc6Share;
  return {pass, fmt("short regime |F_A + F_B|/|F_A| = %.2e (tol %.0e); long regime same sign on %.1f%% of 400 samples "
                    "(need %.0f%%)",
                    worst_exact, kAc6Rel, 100.0 * frac, 100.0 * kAc6Share)};
}

Outcome ac7() {
  const SweepConfig c = preset("fig1f");
  const SweepTable t = run_sweep(c, {false, 1, {}});
  const auto fnet = column(t, "F_net"), rl = column(t, "R_lambda");
  std::size_t k = 0;
  for (std::size_t i = 0; i < fnet.size(); ++i)
    if (std::abs(fnet[i]) > std::abs(fnet[k])) k = i;
  const double peak = std::abs(fnet[k]);
  const double ratio = peak / kAc7Target;
  info("F_net at the peak is %.3e N (sign %s: toward %s)", fnet[k], fnet[k] < 0 ? "-" : "+",
              fnet[k] < 0 ? "atom B, the higher-frequency atom" : "atom A, the lower-frequency atom");
  const bool near_lambda = rl[k] >= 0.1 && rl[k] <= 10.0;
  const bool pass = ratio <= kAc7Factor && ratio >= 1.0 / kAc7Factor && near_lambda && t.failed_rows == 0;
  return {pass, fmt("peak |F_net| = %.3e N at R = %.3f lambda_A (target 1e-23 N within x%.0f, peak in [0.1, 10] lambda)",
                    peak, rl[k], kAc7Factor)};
}

Outcome ac8() {
  SweepConfig c = preset("fig2a");
  c.separation = 0.3;
  c.separation_unit = LengthUnit::lambda;
  c.outputs = {"F_A_rho", "F_B_rho"};
  const SweepTable t = run_sweep(c, {false, 1, {}});
  const auto u = column(t, "u_ratio"), fa = column(t, "F_A_rho");
  // Linearity: residual of the straight line through the end points.
  double resid = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double line = fa.front() + (fa.back() - fa.front()) * (u[i] - u.front()) / (u.back() - u.front());
    resid = std::max(resid, std::abs(fa[i] - line));
  }
  resid /= max_abs(fa);
  std::size_t kmin = 0;
  for (std::size_t i = 0; i < fa.size(); ++i)
    if (std::abs(fa[i]) < std::abs(fa[kmin])) kmin = i;
  const double u_zero = u.front() - fa.front() * (u.back() - u.front()) / (fa.back() - fa.front());
  const bool flips = (fa.front() > 0) != (fa.back() > 0);
  const bool min_at_half = std::abs(u[kmin] - 0.5) < 0.011;

  // Reversing the frequency order reverses the sign at the same light.
  SweepConfig rev = c;
  rev.atom_b.omega_ratio = 2.0 - *c.atom_b.omega_ratio;
  const auto fa_rev = column(run_sweep(rev, {false, 1, {}}), "F_A_rho");
  const bool order_flip = (fa_rev.back() > 0) != (fa.back() > 0) && (fa_rev.front() > 0) != (fa.front() > 0);

  // Thermal light at 300 K, same atoms and separation.
  const ScenarioBuilder bld(c);
  PointOverrides o;
  o.R = bld.length_to_natural(0.3, LengthUnit::lambda);
  const Scenario s = bld.build(o);
  const double T300 = kUnits.temperature_to_natural(300.0);
  const double f_th = force_exact(Target::A, s.a, s.b, PhotonField::thermal(T300), std::nullopt, *o.R).value;
  const double f_art = kUnits.force_to_natural(max_abs(fa));
  const double orders = std::log10(std::abs(f_art / f_th));
  info("artificial (U = 6e-4 J/m^3 in 1e-6 w_A) / thermal 300 K force ratio = 10^%.1f", orders);
  info("F_A vanishes at U(w_A)/U = %.6f; F_A > 0 (repulsive) for U(w_A)/U %s that point with w_A < w_B", u_zero,
       fa.back() > 0 ? "above" : "below");
  // The fig2a preset places the atoms at 0.3 c/w_A, where retardation is weaker.
  const SweepConfig pre = preset("fig2a");
  const auto fp = column(run_sweep(pre, {false, 1, {}}), "F_A_rho");
  info("at the fig2a preset separation 0.3 c/w_A (w_A R = 0.3) F_A vanishes at U(w_A)/U = %.6f",
       -fp.front() / (fp.back() - fp.front()));
  const bool pass = resid < kAc8Linear && flips && min_at_half && order_flip && orders >= kAc8Orders;
  return {pass, fmt("linearity residual %.1e (tol %.0e); |F| minimum at u = %.2f; sign flips across it and with w_A - w_B; "
                    "artificial/thermal = 10^%.1f (need >= 10^6)",
                    resid, kAc8Linear, u[kmin], orders)};
}

Outcome ac9() {
  auto sweep = [](const char* name, double u_ratio) {
    SweepConfig c = preset(name);
    c.field.u_ratio = u_ratio;
    c.outputs = {"F_A_rho", "F_B_rho"};
    return run_sweep(c, {false, 1, {}});
  };
  const SweepTable only_a = sweep("fig3a", 1.0);  // U(w_B) = 0
  const SweepTable half = sweep("fig3a", 0.5);
  const auto fb = column(only_a, "F_B_rho"), fa = column(only_a, "F_A_rho");
  const int fb_changes = sign_changes(fb), fa_changes = sign_changes(fa);
  bool fb_monotonic = true;
  for (std::size_t i = 1; i < fb.size(); ++i)
    if (std::abs(fb[i]) > std::abs(fb[i - 1])) fb_monotonic = false;
  const double amp_a_full = max_abs(fa), amp_a_half = max_abs(column(half, "F_A_rho"));
  const double amp_b_half = max_abs(column(half, "F_B_rho"));
  const double balance = amp_a_half / amp_b_half;
  const bool pass = fb_changes == 0 && fb_monotonic && fa_changes > 50 && amp_a_full > 1.9 * amp_a_half &&
                    std::abs(balance - 1.0) < 0.01;
  return {pass, fmt("U(w_B) = 0: F_B sign changes %d, |F_B| monotonic %s; F_A sign changes %d; "
                    "F_A/F_B amplitude at equal split %.4f, F_A amplitude full/half %.3f",
                    fb_changes, fb_monotonic ? "yes" : "no", fa_changes, balance, amp_a_full / amp_a_half)};
}

Outcome ac10() {
  const TwoLevelAtom ax = kRb.in_state(AtomState::excited);
  const PhotonField v = PhotonField::vacuum();
  std::vector<double> ua, ub;
  for (int i = 0; i < 1000; ++i) {
    const double R = (10.0 + 10.0 * i / 999.0) * kLambda;
    ua.push_back(potential_exact(Target::A, ax, kK, v, 0.0, R));
    ub.push_back(potential_exact(Target::B, ax, kK, v, 0.0, R));
  }
  const int changes = sign_changes(ua);
  bool mono = sign_changes(ub) == 0;
  for (std::size_t i = 1; i < ub.size(); ++i)
    if (std::abs(ub[i]) >= std::abs(ub[i - 1])) mono = false;
  return {changes >= kAc10Changes && mono,
          fmt("U_A sign changes over [10, 20] lambda: %d (need >= %d); U_B monotonic: %s", changes, kAc10Changes,
              mono ? "yes" : "no")};
}

Outcome ac11() {
  int identical = 0, total = 0;
  std::string bad;
  for (const auto& name : scenario_names()) {
    if (name == "custom") continue;
    const SweepConfig c = preset(name);
    const std::string a = to_csv(run_sweep(c, {false, 1, {}}));
    const std::string b = to_csv(run_sweep(c, {false, 1, {}}));
    const std::string p = to_csv(run_sweep(c, {false, 4, {}}));
    const std::string m1 = sweep_manifest(c, {false, 1, {}}).dump(2), m2 = sweep_manifest(c, {false, 1, {}}).dump(2);
    ++total;
    if (a == b && a == p && m1 == m2) ++identical;
    else bad += " " + name;
  }
  return {identical == total, fmt("%d of %d figure presets byte-identical across runs and 1 vs 4 workers", identical,
                                  total) +
                                  bad};
}

}  // namespace

int main() {
  std::printf("vdw %s acceptance\n", version);
  run(1, ac1);
  run(2, ac2);
  run(3, ac3);
  run(4, ac4);
  run(5, ac5);
  run(6, ac6);
  run(7, ac7);
  run(8, ac8);
  run(9, ac9);
  run(10, ac10);
  run(11, ac11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
