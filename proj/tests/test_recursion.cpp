#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "stepwave/error.hpp"
#include "stepwave/oracle.hpp"
#include "stepwave/recursion.hpp"
#include "test_support.hpp"

using namespace stepwave;

namespace {

const ParticleContext electron = ParticleContext::from_mass(511e3);

DiscretizedPotential step_at(std::size_t n, std::size_t m, double u1) {
  std::vector<double> x(n + 1), u(n + 1);
  for (std::size_t j = 0; j <= n; ++j) {
    x[j] = 0.01 * static_cast<double>(j);
    u[j] = j >= m ? u1 : 0.0;
  }
  return DiscretizedPotential::from_nodes(x, u);
}

} // namespace

TEST_CASE("free particle") {
  const auto dp = discretize(PotentialSpec::constant(0.0), -1.0, 2.0, 300);
  const double e = 0.7;
  const auto s = left_sweep(dp, e, electron);
  const double k = electron.phi * std::sqrt(e);
  for (std::size_t j = 1; j <= dp.steps() + 1; ++j) CHECK(std::abs(s.R[j]) < 1e-15);
  for (std::size_t j = 1; j <= dp.steps(); ++j)
    CHECK(std::abs(s.T[j] - std::polar(1.0, k * dp.dx[j - 1])) < 1e-13);
  CHECK(std::abs(s.A.back() - std::polar(1.0, k * 3.0)) < 1e-11);
  CHECK(std::abs(s.A.back()) == doctest::Approx(1.0).epsilon(1e-12));

  const auto r = right_sweep(dp, e, electron);
  for (const auto& v : r.Rbar) CHECK(std::abs(v) < 1e-15);
  CHECK(std::abs(r.D[1]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("boundary values and amplitude chains") {
  std::mt19937_64 rng(7);
  const auto dp = testing::random_potential(rng, 80, -0.3, 0.6, 4.0);
  const double e = 0.35;
  const auto s = left_sweep(dp, e, electron);
  const std::size_t n = dp.steps();
  REQUIRE(s.k.size() == n + 1);
  REQUIRE(s.R.size() == n + 2);
  CHECK(s.R[n + 1] == cplx(0.0, 0.0));
  CHECK(s.A[0] == cplx(1.0, 0.0));
  CHECK(s.B[n] == cplx(0.0, 0.0));
  for (std::size_t j = 1; j <= n; ++j) {
    CHECK(std::abs(s.A[j] - s.A[j - 1] * s.T[j]) <= 1e-12 * std::abs(s.A[j]));
    CHECK(std::abs(s.B[j] - s.A[j] * s.R[j + 1]) <= 1e-12 * std::abs(s.B[j]) + 1e-300);
  }

  const auto r = right_sweep(dp, e, electron);
  CHECK(r.Rbar[0] == cplx(0.0, 0.0));
  CHECK(r.D[n + 1] == cplx(1.0, 0.0));
  CHECK(r.C[1] == cplx(0.0, 0.0));
  for (std::size_t j = 1; j <= n; ++j) {
    CHECK(std::abs(r.D[j] - r.D[j + 1] * r.Tbar[j]) <= 1e-12 * std::abs(r.D[j]));
    CHECK(std::abs(r.C[j] - r.D[j] * r.Rbar[j - 1]) <= 1e-12 * std::abs(r.C[j]) + 1e-300);
  }

  const auto pair = reflection_sweeps(dp, e, electron);
  for (std::size_t j = 1; j <= n; ++j) {
    CHECK(pair.R[j] == s.R[j]);
    CHECK(pair.Rbar[j] == r.Rbar[j]);
  }
}

TEST_CASE("single step against the analytic step") {
  const double u1 = 0.2;
  const auto dp = step_at(200, 90, u1);
  for (double e : {0.25, 0.5, 1.3}) {
    const auto s = left_sweep(dp, e, electron);
    const auto ref = oracle::analytic_step_RT(e, 0.0, u1, electron);
    CHECK(std::norm(s.B[0] / s.A[0]) == doctest::Approx(ref.reflection).epsilon(1e-12));

    const auto r = right_sweep(dp, e, electron);
    // right incidence: reflection generated at the step, seen on the high side
    const double k0 = electron.phi * std::sqrt(e), k1 = electron.phi * std::sqrt(e - u1);
    const std::size_t n = dp.steps();
    CHECK(std::abs(r.C[n + 1] / r.D[n + 1]) == doctest::Approx(std::abs((k1 - k0) / (k1 + k0))).epsilon(1e-12));
  }
}

TEST_CASE("square barrier tunnelling matches the closed form") {
  const auto spec = make_builtin("square_barrier", {{"V0", 0.5}, {"width", 1.0}});
  const auto dp = discretize(spec, -5.0, 5.0, 1000);
  for (double e : {0.05, 0.2, 0.45, 0.5, 0.8, 2.0}) {
    const auto s = left_sweep(dp, e, electron);
    const double t = std::norm(s.A.back());
    CHECK(t == doctest::Approx(oracle::analytic_square_barrier_T(e, 0.5, 1.0, electron)).epsilon(1e-9));
  }
}

TEST_CASE("streamed product equals the amplitude chain") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dp = testing::random_potential(rng, 60, -0.5, 1.0, 3.0);
    const double e = 0.05 + 0.05 * trial;
    const auto s = left_sweep(dp, e, electron);
    const auto st = streamed_transmission(dp, e, electron);
    CHECK(std::abs(st.product - s.A.back()) <= 1e-12 * std::abs(s.A.back()));
    CHECK(std::abs(st.reflection - s.R[1]) <= 1e-12);
    CHECK(st.k_first == s.k.front());
    CHECK(st.k_last == s.k.back());
  }
}

TEST_CASE("current conservation, reciprocity and mirror symmetry") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> energy(0.01, 1.5);
  for (int trial = 0; trial < 200; ++trial) {
    const auto dp = testing::random_potential(rng, 50, -0.5, 1.0, 2.5);
    const double e = energy(rng);
    const auto s = left_sweep(dp, e, electron);
    const auto r = right_sweep(dp, e, electron);
    const double t_left = std::norm(s.A.back());
    const double t_right = std::norm(r.D[1]);
    CHECK(t_left + std::norm(s.R[1]) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t_left == doctest::Approx(t_right).epsilon(1e-10));
    CHECK(std::abs(r.Rbar.back()) == doctest::Approx(std::abs(s.R[1])).epsilon(1e-9));
  }

  // strictly symmetric potential: step j mirrors onto step N-1-j
  std::uniform_real_distribution<double> level(-0.3, 0.8);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 41;
    std::vector<double> x(n + 1), u(n + 1, 0.0);
    for (std::size_t j = 0; j <= n; ++j) x[j] = 0.05 * static_cast<double>(j);
    for (std::size_t j = 1; j < n / 2 + 1; ++j) u[j] = u[n - 1 - j] = level(rng);
    u[n - 1] = 0.0;
    const auto dp = DiscretizedPotential::from_nodes(x, u);
    const double e = energy(rng);
    const auto pair = reflection_sweeps(dp, e, electron);
    CHECK(std::abs(pair.Rbar[n]) == doctest::Approx(std::abs(pair.R[1])).epsilon(1e-10));
  }
}

TEST_CASE("evanescent regions stay finite") {
  const auto spec = make_builtin("square_barrier", {{"V0", 5.0}, {"width", 2.0}});
  const auto dp = discretize(spec, -3.0, 3.0, 600);
  const auto s = left_sweep(dp, 0.1, electron);
  for (const auto& a : s.A) CHECK(std::isfinite(std::abs(a)));
  CHECK(std::norm(s.A.back()) < 1e-15);
}

TEST_CASE("errors") {
  const auto dp = discretize(PotentialSpec::constant(0.0), 0.0, 1.0, 10);
  CHECK_THROWS_AS(left_sweep(dp, std::nan(""), electron), NumericalError);
  CHECK_THROWS_AS(right_sweep(dp, INFINITY, electron), NumericalError);

  const NumericalError err("vanishing recursion denominator", 0.25, 7);
  const std::string what = err.what();
  CHECK(what.find("0.25") != std::string::npos);
  CHECK(what.find("step 7") != std::string::npos);
  CHECK(err.step().value() == 7);
}

TEST_CASE("sweep counter") {
  const auto dp = discretize(PotentialSpec::constant(0.0), 0.0, 1.0, 10);
  const auto before = left_sweep_count();
  left_sweep(dp, 1.0, electron);
  left_sweep(dp, 2.0, electron);
  CHECK(left_sweep_count() - before == 2);
}
