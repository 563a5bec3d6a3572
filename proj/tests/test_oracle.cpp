#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stepwave/error.hpp"
#include "stepwave/oracle.hpp"

using namespace stepwave;
using namespace stepwave::oracle;

namespace {

const ParticleContext electron = ParticleContext::from_mass(511e3);

} // namespace

TEST_CASE("step formulas conserve current") {
  for (double e : {0.31, 0.5, 4.0}) {
    const auto rt = analytic_step_RT(e, 0.0, 0.3, electron);
    CHECK(rt.reflection + rt.transmission == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto full = analytic_step_RT(0.2, 0.0, 0.3, electron);
  CHECK(full.reflection == 1.0);
  CHECK(full.transmission == 0.0);
  CHECK_THROWS_AS(analytic_step_RT(0.2, 0.3, 0.0, electron), InvalidArgument);
  // k ratio 2: r = 1/3
  const auto r = analytic_step_RT(4.0, 0.0, 3.0, electron);
  CHECK(r.reflection == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("barrier formula limits") {
  const double v0 = 0.5, a = 1.0;
  const double below = analytic_square_barrier_T(v0 * (1.0 - 1e-7), v0, a, electron);
  const double at = analytic_square_barrier_T(v0, v0, a, electron);
  const double above = analytic_square_barrier_T(v0 * (1.0 + 1e-7), v0, a, electron);
  CHECK(at == doctest::Approx(below).epsilon(1e-5));
  CHECK(at == doctest::Approx(above).epsilon(1e-5));
  const double q = electron.phi * a;
  CHECK(at == doctest::Approx(1.0 / (1.0 + q * q * v0 / 4.0)));
  // transparency where phi sqrt(E - V0) a = n pi
  const double kq = std::numbers::pi / a;
  const double e_res = v0 + (kq / electron.phi) * (kq / electron.phi);
  CHECK(analytic_square_barrier_T(e_res, v0, a, electron) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(analytic_square_barrier_T(0.3, 0.0, a, electron) == 1.0);
  CHECK_THROWS_AS(analytic_square_barrier_T(0.0, v0, a, electron), InvalidArgument);
}

TEST_CASE("finite well roots satisfy the matching conditions") {
  const double depth = 0.3, half = 1.0;
  const auto levels = finite_well_eigenvalues(depth, half, electron);
  // z0 = phi a sqrt(V0) ~ 2.81 -> two bound states
  REQUIRE(levels.size() == 2);
  CHECK(levels[0].even);
  CHECK_FALSE(levels[1].even);
  for (const auto& l : levels) {
    CHECK(l.energy > -depth);
    CHECK(l.energy < 0.0);
    const double k = electron.phi * std::sqrt(l.energy + depth);
    const double kappa = electron.phi * std::sqrt(-l.energy);
    const double lhs = l.even ? k * std::tan(k * half) : -k / std::tan(k * half);
    CHECK(lhs == doctest::Approx(kappa).epsilon(1e-8));
  }
}

TEST_CASE("deep well approaches the infinite well") {
  const double depth = 1e4, half = 0.5;
  const auto levels = finite_well_eigenvalues(depth, half, electron);
  REQUIRE(levels.size() > 3);
  const double e1 = std::pow(std::numbers::pi / (2.0 * half * electron.phi), 2);
  CHECK(levels[0].energy + depth == doctest::Approx(e1).epsilon(0.01));
  CHECK(levels[1].energy + depth == doctest::Approx(4.0 * e1).epsilon(0.01));
}

TEST_CASE("shallow well keeps one even state") {
  const auto levels = finite_well_eigenvalues(1e-3, 0.1, electron);
  REQUIRE(levels.size() == 1);
  CHECK(levels[0].even);
  CHECK_THROWS_AS(finite_well_eigenvalues(-1.0, 1.0, electron), InvalidArgument);
}

TEST_CASE("reference ladders") {
  CHECK(reference_level(Harmonic{0.1}, 0) == doctest::Approx(0.05));
  CHECK(reference_level(Harmonic{0.1}, 5) == doctest::Approx(0.55));
  CHECK(reference_level(Rydberg{}, 1) == doctest::Approx(-13.6057).epsilon(1e-4));
  CHECK(reference_level(Rydberg{}, 2) == doctest::Approx(-3.4014).epsilon(1e-4));
  CHECK_THROWS_AS(reference_level(Harmonic{0.1}, -1), InvalidArgument);
  CHECK_THROWS_AS(reference_level(Rydberg{}, 0), InvalidArgument);
}
