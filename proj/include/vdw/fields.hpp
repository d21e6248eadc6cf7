// fields.hpp - isotropic unpolarized photon fields, described by N(omega).
#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "vdw/units.hpp"

namespace vdw {

struct Vacuum {};

struct Thermal {
  double T;  // natural units (k_B T / hbar omega_ref)
};

/// Piecewise-linear N(omega) between samples, zero outside the sampled range.
struct Tabulated {
  std::vector<double> omega;
  std::vector<double> n;
};

/// Two top-hat peaks of width `width` centred on omega_a and omega_b.
/// Heights come from the energy density spread uniformly over the window.
struct TwoPeak {
  double omega_a, omega_b;
  double n_a, n_b;  // occupation inside each window
  double width;
  double u_a_si = 0.0, u_b_si = 0.0;  // J/m^3, kept for reporting
};

class PhotonField {
 public:
  using Model = std::variant<Vacuum, Thermal, Tabulated, TwoPeak>;

  PhotonField() : model_(Vacuum{}) {}

  static PhotonField vacuum() { return PhotonField(); }

  static PhotonField thermal(double T) {
    if (!(T > 0.0) || !std::isfinite(T)) throw std::domain_error("thermal field: T must be positive");
    return PhotonField(Thermal{T});
  }

  static PhotonField tabulated(std::vector<double> omega, std::vector<double> n) {
    if (omega.size() != n.size() || omega.size() < 2)
      throw std::invalid_argument("tabulated field: need at least two (omega, N) samples");
    for (std::size_t i = 0; i < omega.size(); ++i) {
      if (!(omega[i] >= 0.0) || !std::isfinite(omega[i]))
        throw std::invalid_argument("tabulated field: frequencies must be finite and non-negative");
      if (!(n[i] >= 0.0) || !std::isfinite(n[i]))
        throw std::invalid_argument("tabulated field: occupations must be finite and non-negative");
      if (i > 0 && !(omega[i] > omega[i - 1]))
        throw std::invalid_argument("tabulated field: frequency grid must be strictly increasing");
    }
    return PhotonField(Tabulated{std::move(omega), std::move(n)});
  }

  /// Energy densities in J/m^3; frequencies and width in natural units of `units`.
  static PhotonField two_peak(double omega_a, double omega_b, double u_a, double u_b, double width,
                              const UnitSystem& units) {
    if (!(omega_a > 0.0) || !(omega_b > 0.0)) throw std::domain_error("two-peak field: peak frequencies must be positive");
    if (!(width > 0.0)) throw std::domain_error("two-peak field: bandwidth must be positive");
    if (u_a < 0.0 || u_b < 0.0) throw std::domain_error("two-peak field: energy densities must be non-negative");
    if (!(std::abs(omega_a - omega_b) > width))
      throw std::domain_error("two-peak field: peaks overlap (|omega_a - omega_b| <= bandwidth)");
    if (width >= std::min(omega_a, omega_b))
      throw std::domain_error("two-peak field: bandwidth must be smaller than the peak frequencies");
    const double dw_si = units.frequency_to_si(width);
    const double na = spectral_density_to_occupation(u_a / dw_si, units.frequency_to_si(omega_a));
    const double nb = spectral_density_to_occupation(u_b / dw_si, units.frequency_to_si(omega_b));
    return PhotonField(TwoPeak{omega_a, omega_b, na, nb, width, u_a, u_b});
  }

  const Model& model() const { return model_; }
  bool is_vacuum() const { return std::holds_alternative<Vacuum>(model_); }

  double occupation(double omega) const {
    if (omega < 0.0) throw std::domain_error("occupation: omega must be non-negative");
    return std::visit([omega](const auto& m) { return eval(m, omega); }, model_);
  }

  /// N(omega) vanishes (or is below double resolution) beyond this frequency.
  double upper_cutoff() const {
    return std::visit(
        [](const auto& m) -> double {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, Vacuum>) return 0.0;
          else if constexpr (std::is_same_v<M, Thermal>) return 60.0 * m.T;
          else if constexpr (std::is_same_v<M, Tabulated>) return m.omega.back();
          else return std::max(m.omega_a, m.omega_b) + 0.5 * m.width;
        },
        model_);
  }

  /// Frequencies where N has kinks or jumps; quadrature panels must not straddle them.
  std::vector<double> breakpoints() const {
    return std::visit(
        [](const auto& m) -> std::vector<double> {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, Tabulated>) return m.omega;
          else if constexpr (std::is_same_v<M, TwoPeak>)
            return {m.omega_a - 0.5 * m.width, m.omega_a + 0.5 * m.width, m.omega_b - 0.5 * m.width,
                    m.omega_b + 0.5 * m.width};
          else return {};
        },
        model_);
  }

  /// Narrowest spectral feature, used to keep the resonance regulator below it.
  double min_feature_width() const {
    return std::visit(
        [](const auto& m) -> double {
          using M = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<M, Thermal>) return m.T;
          else if constexpr (std::is_same_v<M, TwoPeak>) return m.width;
          else if constexpr (std::is_same_v<M, Tabulated>) {
            double w = std::numeric_limits<double>::infinity();
            for (std::size_t i = 1; i < m.omega.size(); ++i) w = std::min(w, m.omega[i] - m.omega[i - 1]);
            return w;
          } else return std::numeric_limits<double>::infinity();
        },
        model_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& m) -> std::string {
          using M = std::decay_t<decltype(m)>;
          std::ostringstream os;
          os.precision(10);
          if constexpr (std::is_same_v<M, Vacuum>) os << "vacuum";
          else if constexpr (std::is_same_v<M, Thermal>) os << "thermal(T=" << m.T << ")";
          else if constexpr (std::is_same_v<M, Tabulated>) os << "tabulated(" << m.omega.size() << " samples)";
          else os << "two_peak(N_a=" << m.n_a << ", N_b=" << m.n_b << ", width=" << m.width << ")";
          return os.str();
        },
        model_);
  }

 private:
  explicit PhotonField(Model m) : model_(std::move(m)) {}

  static double eval(const Vacuum&, double) { return 0.0; }
  static double eval(const Thermal& m, double w) {
    if (w == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / std::expm1(w / m.T);
  }
  static double eval(const Tabulated& m, double w) {
    if (w < m.omega.front() || w > m.omega.back()) return 0.0;
    const auto it = std::upper_bound(m.omega.begin(), m.omega.end(), w);
    if (it == m.omega.end()) return m.n.back();
    const std::size_t i = static_cast<std::size_t>(it - m.omega.begin());
    const double t = (w - m.omega[i - 1]) / (m.omega[i] - m.omega[i - 1]);
    return (1.0 - t) * m.n[i - 1] + t * m.n[i];
  }
  static double eval(const TwoPeak& m, double w) {
    double n = 0.0;
    if (std::abs(w - m.omega_a) <= 0.5 * m.width) n += m.n_a;
    if (std::abs(w - m.omega_b) <= 0.5 * m.width) n += m.n_b;
    return n;
  }

  Model model_;
};

/// Reads a two-column spectrum (omega in eV, then N or U_omega). A header line
/// `# column: occupation` or `# column: spectral_density` (J s / m^3) is required.
inline PhotonField load_tabulated_field(const std::string& path, const UnitSystem& units) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open spectrum file '" + path + "'");
  enum class Col { unknown, occupation, density } col = Col::unknown;
  std::vector<double> w, n;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') {
      const auto k = line.find("column:");
      if (k != std::string::npos) {
        std::istringstream ts(line.substr(k + 7));
        std::string tag;
        ts >> tag;
        if (tag == "occupation") col = Col::occupation;
        else if (tag == "spectral_density") col = Col::density;
        else throw std::runtime_error(path + ":" + std::to_string(lineno) + ": unknown column tag '" + tag + "'");
      }
      continue;
    }
    if (col == Col::unknown)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": data before '# column: occupation|spectral_density' header");
    std::istringstream ls(line);
    double ev = 0.0, v = 0.0;
    std::string extra;
    if (!(ls >> ev >> v) || (ls >> extra))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected two numeric columns");
    if (!(ev > 0.0))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": photon energy must be positive");
    const double omega_si = ev_to_angular(ev);
    w.push_back(units.frequency_to_natural(omega_si));
    n.push_back(col == Col::occupation ? v : spectral_density_to_occupation(v, omega_si));
  }
  return PhotonField::tabulated(std::move(w), std::move(n));
}

}  // namespace vdw
