#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vdw/fields.hpp"
#include "vdw/forces.hpp"
#include "vdw/quadrature.hpp"

using namespace vdw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("vacuum and thermal occupation", "[fields]") {
  const PhotonField v = PhotonField::vacuum();
  for (double w : {0.0, 0.1, 1.0, 50.0}) CHECK(v.occupation(w) == 0.0);
  const PhotonField t = PhotonField::thermal(1.3);
  CHECK_THAT(t.occupation(1.3), WithinRel(1.0 / (std::exp(1.0) - 1.0), 1e-15));
  CHECK_THAT(t.occupation(1.3), WithinRel(0.58198, 1e-5));
  double prev = t.occupation(1e-3);
  for (double w = 2e-3; w < 100.0; w *= 1.1) {
    const double n = t.occupation(w);
    CHECK(n < prev);
    CHECK(n >= 0.0);
    prev = n;
  }
  CHECK_THROWS(PhotonField::thermal(0.0));
  CHECK_THROWS(t.occupation(-1.0));
}

TEST_CASE("tabulated occupation", "[fields]") {
  const PhotonField f = PhotonField::tabulated({1.0, 2.0, 4.0}, {0.0, 2.0, 1.0});
  CHECK(f.occupation(0.5) == 0.0);
  CHECK(f.occupation(5.0) == 0.0);
  CHECK_THAT(f.occupation(1.5), WithinRel(1.0, 1e-15));
  CHECK_THAT(f.occupation(3.0), WithinRel(1.5, 1e-15));
  CHECK_THROWS(PhotonField::tabulated({1.0, 0.5}, {0.0, 1.0}));
  CHECK_THROWS(PhotonField::tabulated({1.0, 2.0}, {0.0, -1.0}));
  CHECK_THROWS(PhotonField::tabulated({1.0}, {0.0}));
}

TEST_CASE("two-peak spectrum", "[fields]") {
  const UnitSystem u = UnitSystem::from_ev(1.59);
  const double wb = 1.0001, dw = 1e-6;
  const PhotonField only_a = PhotonField::two_peak(1.0, wb, 6e-4, 0.0, dw, u);
  CHECK(only_a.occupation(wb) == 0.0);
  CHECK(only_a.occupation(1.0) > 0.0);
  CHECK(only_a.occupation(1.0 + 0.6 * dw) == 0.0);
  CHECK_THROWS(PhotonField::two_peak(1.0, 1.0 + 0.5 * dw, 1.0, 1.0, dw, u));
  CHECK_THROWS(PhotonField::two_peak(1.0, wb, -1.0, 1.0, dw, u));
}

TEST_CASE("two-peak energy density integrates back to U_a + U_b", "[fields]") {
  const UnitSystem u = UnitSystem::from_ev(1.59);
  const double ua = 4.5e-4, ub = 1.5e-4, dw = 1e-6;
  const PhotonField f = PhotonField::two_peak(1.0, 1.0001, ua, ub, dw, u);
  // u(w) = hbar w^3 N / (pi^2 c^3) in SI, integrated over each top hat.
  const double pi = 3.14159265358979323846, c = 299792458.0, hbar = 1.054571817e-34;
  auto density = [&](double w_nat) {
    const double w = u.frequency_to_si(w_nat);
    return hbar * w * w * w * f.occupation(w_nat) / (pi * pi * c * c * c) * u.frequency_unit();
  };
  double total = 0.0;
  for (double w0 : {1.0, 1.0001}) {
    // Integrate over the offset from the peak centre: w0 +- dw/2 is not
    // representable to better than 1e-10 of dw. Interior nodes never hit the edges.
    auto hat = [&](double t) { return density(w0 + t); };
    total += integrate_panels(hat, std::vector<double>{-0.5 * dw, 0.5 * dw}).value;
  }
  CHECK_THAT(total, WithinRel(ua + ub, 1e-12));
}

TEST_CASE("two-peak forces depend on U only through U / bandwidth", "[fields]") {
  // The occupation is U / (bandwidth * mode density), so at fixed U the force
  // scales as 1 / bandwidth; the product with the bandwidth is invariant.
  const UnitSystem u = UnitSystem::from_ev(1.59);
  const TwoLevelAtom a(1.0, 4.7e-8), b(1.0001, 4.5e-8);
  const double R = 0.3;
  double ref = 0.0;
  for (double dw : {1e-7, 1e-6, 1e-5}) {
    const PhotonField f = PhotonField::two_peak(1.0, 1.0001, 4e-4, 2e-4, dw, u);
    const double fa = force_exact(Target::A, a, b, f, std::nullopt, R).value * dw;
    if (ref == 0.0) ref = fa;
    CHECK_THAT(fa, WithinRel(ref, 1e-6));
  }
}

TEST_CASE("spectrum files", "[fields]") {
  const UnitSystem u = UnitSystem::from_ev(1.59);
  const auto dir = std::filesystem::temp_directory_path() / "vdw_fields_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "occ.txt") << "# column: occupation\n1.5 0\n1.59 3\n1.7 0\n";
    std::ofstream(dir / "dens.txt") << "# column: spectral_density\n1.5 0\n1.59 1e-18\n1.7 0\n";
    std::ofstream(dir / "bare.txt") << "1.5 0\n1.6 1\n";
    std::ofstream(dir / "junk.txt") << "# column: occupation\n1.5 0 7\n";
  }
  const PhotonField occ = load_tabulated_field((dir / "occ.txt").string(), u);
  CHECK_THAT(occ.occupation(1.0), WithinRel(3.0, 1e-12));
  const PhotonField dens = load_tabulated_field((dir / "dens.txt").string(), u);
  CHECK_THAT(dens.occupation(1.0), WithinRel(spectral_density_to_occupation(1e-18, ev_to_angular(1.59)), 1e-12));
  CHECK_THROWS_WITH(load_tabulated_field((dir / "bare.txt").string(), u),
                    Catch::Matchers::ContainsSubstring("header"));
  CHECK_THROWS_WITH(load_tabulated_field((dir / "junk.txt").string(), u),
                    Catch::Matchers::ContainsSubstring(":2:"));
  CHECK_THROWS(load_tabulated_field((dir / "missing.txt").string(), u));
}
