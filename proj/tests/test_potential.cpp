#include <doctest.h>

#include <cmath>
#include <sstream>

#include "stepwave/error.hpp"
#include "stepwave/potential.hpp"

using namespace stepwave;

namespace {

PotentialSpec lj(double j = 0.0) {
  return make_builtin("lennard_jones", {{"A", 0.124e-12}, {"B", 1.488e-6}, {"mass", 469.4e6}, {"J", j}});
}

} // namespace

TEST_CASE("grid spacing") {
  const auto dp = discretize(lj(), 0.002, 0.2, 396);
  CHECK(dp.steps() == 396);
  CHECK(dp.x.front() == 0.002);
  CHECK(dp.x.back() == 0.2);
  for (double d : dp.dx) CHECK(d == doctest::Approx(0.0005).epsilon(1e-9));

  const auto dw = discretize(PotentialSpec::constant(0.0), -20.0, 20.0, 400);
  CHECK(dw.dx[17] == doctest::Approx(0.1));
}

TEST_CASE("constant spec") {
  const auto dp = discretize(PotentialSpec::constant(-0.25), 0.0, 1.0, 10);
  for (double u : dp.u) CHECK(u == -0.25);
  CHECK(dp.dx.size() == dp.x.size());
  CHECK(dp.dx.back() == dp.dx[dp.steps() - 1]);
}

TEST_CASE("left-node sampling is pure") {
  const auto a = discretize(lj(3.0), 0.002, 0.2, 396);
  const auto b = discretize(lj(3.0), 0.002, 0.2, 396);
  CHECK(a.u == b.u);
  CHECK(a.x == b.x);
}

TEST_CASE("lennard-jones values and centrifugal term") {
  const double x = 0.12;
  const double base = 0.124e-12 / std::pow(x, 12) - 1.488e-6 / std::pow(x, 6);
  CHECK(lj()(x) == doctest::Approx(base));
  const double phi = std::sqrt(2.0 * 469.4e6) / 197.3269804;
  CHECK(lj(2.0)(x) == doctest::Approx(base + 6.0 / (phi * phi * x * x)));
  // minimum near 0.11 nm with depth B^2/(4A)
  const double xmin = std::pow(2.0 * 0.124e-12 / 1.488e-6, 1.0 / 6.0);
  CHECK(lj()(xmin) == doctest::Approx(-1.488e-6 * 1.488e-6 / (4.0 * 0.124e-12)));
}

TEST_CASE("builtin parameter checks") {
  CHECK_THROWS_AS(make_builtin("nope", {}), InvalidArgument);
  CHECK_THROWS_AS(make_builtin("square_barrier", {{"V0", 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(make_builtin("square_barrier", {{"V0", 1.0}, {"width", 1.0}, {"colour", 2.0}}),
                  InvalidArgument);
  CHECK_THROWS_AS(make_builtin("square_barrier", {{"V0", 1.0}, {"width", -1.0}}), InvalidArgument);
  const auto names = builtin_names();
  CHECK(names.size() == 5);
  const auto [req, opt] = builtin_parameters("double_well");
  CHECK(req.size() == 6);
  CHECK(opt.size() == 1);
}

TEST_CASE("square barrier is half-open") {
  const auto b = make_builtin("square_barrier", {{"V0", 0.3}, {"width", 2.0}, {"center", 1.0}});
  CHECK(b(-0.0001) == 0.0);
  CHECK(b(0.0) == 0.3);
  CHECK(b(1.9999) == 0.3);
  CHECK(b(2.0) == 0.0);
}

TEST_CASE("double barrier with v-well") {
  const auto p = make_builtin("double_barrier_vwell",
                              {{"height", 0.8}, {"barrier_width", 0.6}, {"well_width", 1.8}, {"depth", 0.1}});
  CHECK(p(0.0) == doctest::Approx(-0.1));
  CHECK(p(0.45) == doctest::Approx(-0.05));
  CHECK(p(-0.45) == doctest::Approx(-0.05));
  CHECK(p(1.0) == 0.8);
  CHECK(p(-1.2) == 0.8);
  CHECK(p(1.6) == 0.0);
  CHECK(p(-5.0) == 0.0);
}

TEST_CASE("double well uses the left curvature up to a") {
  const ParameterMap prm{{"A_left", 1.0}, {"A_right", 2.0}, {"B", 0.5}, {"C", -1.0},
                         {"delta", 0.0}, {"alpha", 1.0}, {"a", 3.0}};
  const auto p = make_builtin("double_well", prm);
  CHECK(p(3.0) == doctest::Approx(0.5 - 1.0));
  CHECK(p(2.0) == doctest::Approx(1.0 + 0.5 * std::exp(-1.0) - 1.0));
  CHECK(p(4.0) == doctest::Approx(2.0 + 0.5 * std::exp(-1.0) - 1.0));
}

TEST_CASE("coulomb truncation") {
  const auto c = make_builtin("coulomb_trunc", {{"epsilon", 1e-4}});
  CHECK(c(0.0) == doctest::Approx(-1.44e4));
  CHECK(c(-0.5) == doctest::Approx(-1.44 / 0.5001));
}

TEST_CASE("expression pieces") {
  std::vector<ExpressionPiece> pieces{{0.0, 1.0, parse_expr("x")}, {-1.0, 0.0, parse_expr("-2*x")}};
  const auto spec = PotentialSpec::pieces(pieces);
  CHECK(spec(-0.5) == 1.0);
  CHECK(spec(0.0) == 0.0);
  CHECK(spec(0.5) == 0.5);
  CHECK_THROWS_AS(spec(1.0), EvaluationError);
  CHECK_THROWS_AS(spec(-1.5), EvaluationError);

  std::vector<ExpressionPiece> gap{{0.0, 1.0, parse_expr("x")}, {1.5, 2.0, parse_expr("x")}};
  CHECK_THROWS_AS(PotentialSpec::pieces(gap), InvalidArgument);
  CHECK_THROWS_AS(PotentialSpec::pieces({}), InvalidArgument);
}

TEST_CASE("zero-order hold table") {
  const auto t = load_table({{0.0, 1.0}, {1.0, 2.0}});
  CHECK(t(0.5) == 1.0);
  CHECK(t(1.7) == 2.0);
  CHECK(t(-3.0) == 1.0);
  CHECK(t(1.0) == 2.0);
  CHECK_THROWS_AS(load_table({{0.0, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(load_table({{0.0, 1.0}, {0.0, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(load_table({{1.0, 1.0}, {0.0, 2.0}}), InvalidArgument);
}

TEST_CASE("table text format") {
  std::istringstream in("# x U\n0 1\n\n  1 2 # trailing\n");
  const auto rows = read_table(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].x == 1.0);
  CHECK(rows[1].u == 2.0);
  std::istringstream bad("0 1\n1\n");
  CHECK_THROWS_AS(read_table(bad), InvalidArgument);
  CHECK_THROWS_AS(read_table_file("/nonexistent/table.txt"), IoError);
}

TEST_CASE("table round trip reproduces the discretization") {
  const auto a = discretize(lj(), 0.002, 0.2, 396);
  std::stringstream buf;
  write_table(a, buf);
  const auto reloaded = load_table(read_table(buf));
  const auto b = discretize(reloaded, 0.002, 0.2, 396);
  CHECK(a.u == b.u);
}

TEST_CASE("non-finite samples fail loudly") {
  const auto c = make_builtin("coulomb_trunc", {{"epsilon", 0.0}});
  CHECK_THROWS_AS(discretize(c, -1.0, 1.0, 10), EvaluationError);
  CHECK_THROWS_AS(discretize(lj(), 0.0, 0.2, 10), EvaluationError);
  CHECK_THROWS_AS(discretize(lj(), 0.2, 0.1, 10), InvalidArgument);
  CHECK_THROWS_AS(discretize(lj(), 0.1, 0.2, 1), InvalidArgument);
}

TEST_CASE("discretization error shrinks linearly") {
  const auto spec = make_builtin("double_well", {{"A_left", 1e-4}, {"A_right", 1e-4}, {"B", 0.05},
                                                 {"C", -0.1}, {"delta", 0.0}, {"alpha", 2.0}});
  auto worst = [&](std::size_t n) {
    const auto dp = discretize(spec, -20.0, 20.0, n);
    double m = 0.0;
    for (std::size_t j = 0; j < dp.steps(); ++j)
      m = std::max(m, std::abs(dp.u[j] - spec(dp.x[j] + 0.5 * dp.dx[j])));
    return m;
  };
  const double coarse = worst(400), fine = worst(800);
  CHECK(coarse / fine == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("step lookup") {
  const auto dp = discretize(PotentialSpec::constant(0.0), 0.0, 1.0, 10);
  CHECK(dp.step_of(0.0) == 0);
  CHECK(dp.step_of(0.15) == 1);
  CHECK(dp.step_of(1.0) == 10);
  CHECK_THROWS_AS(DiscretizedPotential::from_nodes({0.0, 1.0, 1.0}, {0.0, 0.0, 0.0}), InvalidArgument);
}
