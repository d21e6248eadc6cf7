#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "vdw/asymptotics.hpp"
#include "vdw/forces.hpp"

using namespace vdw;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const double kLambda = 2.0 * M_PI;
const TwoLevelAtom kA(1.0, 4.73975e-8), kB(1.61 / 1.59, 4.46319e-8);
}  // namespace

TEST_CASE("Richardson derivative", "[forces]") {
  auto f = [](double r) { return std::pow(r, -6); };
  for (double R : {0.01, 1.0, 40.0}) {
    const Derivative d = richardson_derivative(f, R, 1e-3 * R, 1e-8);
    CHECK_THAT(d.value, WithinRel(-6.0 * std::pow(R, -7), 1e-8));
    CHECK(d.error <= 1e-8 * std::abs(d.value) + 1e-6 * std::abs(d.value));
  }
  CHECK_THROWS_AS(richardson_derivative([](double x) { return std::abs(x) < 1e-3 ? 0.0 : std::sin(1.0 / x); }, 0.0,
                                        0.01, 1e-10),
                  DifferentiationError);
  CHECK_THROWS(richardson_derivative(f, 1.0, 0.0));
}

TEST_CASE("exact forces reduce to the short-range pair", "[forces]") {
  const PhotonField f = PhotonField::thermal(1.0);
  const double R = 0.01 * kLambda;
  const double fa = force_exact(Target::A, kA, kB, f, std::nullopt, R).value;
  const double fb = force_exact(Target::B, kA, kB, f, std::nullopt, R).value;
  CHECK_THAT(fa, WithinRel(f_short_ground(Target::A, kA, kB, f, R), 5e-3));
  CHECK_THAT(fb, WithinRel(f_short_ground(Target::B, kA, kB, f, R), 5e-3));
}

TEST_CASE("exact forces follow the long-range leading term", "[forces]") {
  const PhotonField f = PhotonField::thermal(1.0);
  const double R = 50.0 * kLambda;
  for (Target t : {Target::A, Target::B}) {
    const double w = t == Target::A ? kA.omega0() : kB.omega0();
    const double envelope = 8.0 * kA.d2() * kB.d2() * f.occupation(w) * std::pow(w, 5) * (kA.omega0() * kB.omega0() / w) /
                            (9.0 * R * R * std::abs(kA.omega0() * kA.omega0() - kB.omega0() * kB.omega0()));
    const double exact = force_exact(t, kA, kB, f, std::nullopt, R).value;
    CHECK_THAT(exact, WithinAbs(f_long_ground(t, kA, kB, f, R), 1e-2 * envelope));
  }
}

TEST_CASE("net force", "[forces]") {
  const ForcePair balanced = make_force_pair(2.5, -2.5, Eigen::Vector3d::UnitX(), 1.0);
  CHECK(net_force(balanced) == 0.0);
  CHECK(balanced.f_net_rho == 0.0);
  const PhotonField f = PhotonField::thermal(1.0);
  const ForcePair p = force_pair_exact(kA, kB, f, std::nullopt, 0.01);
  CHECK(std::abs(p.f_net_rho) < 1e-3 * std::abs(p.f_a_rho));
  CHECK(p.f_a_rho > 0.0);
}

TEST_CASE("forces lie along the separation for any placement", "[forces]") {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  const PhotonField f = PhotonField::thermal(1.0);
  for (int i = 0; i < 5; ++i) {
    const Eigen::Vector3d ra(g(rng), g(rng), g(rng)), rb(g(rng), g(rng), g(rng));
    const ForcePair p = force_pair_exact(kA, kB, f, 1.0, ra, rb);
    const Eigen::Vector3d rho = (ra - rb).normalized();
    CHECK(p.f_a.cross(rho).norm() <= 1e-14 * p.f_a.norm());
    CHECK(p.f_b.cross(rho).norm() <= 1e-14 * p.f_b.norm());
    CHECK_THAT(p.f_a.dot(rho), WithinRel(p.f_a_rho, 1e-14));
    const ForcePair q = force_pair_exact(kA, kB, f, 1.0, (ra - rb).norm());
    CHECK_THAT(p.f_a_rho, WithinRel(q.f_a_rho, 1e-12));
  }
  CHECK_THROWS(force_pair_exact(kA, kB, f, std::nullopt, Eigen::Vector3d::Ones(), Eigen::Vector3d::Ones()));
}

TEST_CASE("force step validation", "[forces]") {
  const PhotonField f = PhotonField::thermal(1.0);
  CHECK_THROWS(force_exact(Target::A, kA, kB, f, std::nullopt, -1.0));
  StepSpec big;
  big.h_override = 2.0;
  CHECK_THROWS(force_exact(Target::A, kA, kB, f, std::nullopt, 1.0, big));
  CHECK(default_force_step(kA, kB, 100.0) <= 1e-2 / (2.0 * kB.omega0()));
  CHECK(default_force_step(kA, kB, 0.01) == 1e-5);
}
