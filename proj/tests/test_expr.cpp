#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "stepwave/error.hpp"
#include "stepwave/expr.hpp"

using namespace stepwave;

TEST_CASE("arithmetic and precedence") {
  CHECK(parse_expr("1 + 2 * 3")(0.0) == 7.0);
  CHECK(parse_expr("(1 + 2) * 3")(0.0) == 9.0);
  CHECK(parse_expr("8 / 4 / 2")(0.0) == 1.0);
  CHECK(parse_expr("10 - 4 - 3")(0.0) == 3.0);
  CHECK(parse_expr("2^3^2")(0.0) == 512.0);
  CHECK(parse_expr("-x^2")(3.0) == -9.0);
  CHECK(parse_expr("2^-1")(0.0) == 0.5);
  CHECK(parse_expr("--x")(4.0) == 4.0);
}

TEST_CASE("numbers, constants and functions") {
  CHECK(parse_expr("1.5e-3")(0.0) == doctest::Approx(1.5e-3));
  CHECK(parse_expr(".25")(0.0) == 0.25);
  CHECK(parse_expr("pi")(0.0) == doctest::Approx(std::numbers::pi));
  CHECK(parse_expr("e2")(0.0) == 1.44);
  CHECK(parse_expr("exp(0)")(0.0) == 1.0);
  CHECK(parse_expr("abs(x)")(-2.5) == 2.5);
  CHECK(parse_expr("sqrt(x)")(16.0) == 4.0);
  CHECK(parse_expr("-e2/(abs(x)+1e-4)")(0.5) == doctest::Approx(-1.44 / 0.5001));
}

TEST_CASE("lennard-jones as text") {
  const Expr u = parse_expr("0.124e-12/x^12 - 1.488e-6/x^6");
  const double x = 0.11;
  CHECK(u(x) == doctest::Approx(0.124e-12 / std::pow(x, 12) - 1.488e-6 / std::pow(x, 6)));
}

TEST_CASE("parse errors carry a position") {
  auto position_of = [](const char* text) -> long {
    try {
      parse_expr(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.position());
    }
    return -1;
  };
  CHECK(position_of("1 +") == 3);
  CHECK(position_of("2 * y") == 4);
  CHECK(position_of("(1 + 2") == 6);
  CHECK(position_of("1 2") == 2);
  CHECK(position_of("sin(x)") == 0);
  CHECK(position_of("sqrt x") == 5);
  CHECK(position_of("") == 0);
  CHECK(position_of("3 $ 4") == 2);
}

TEST_CASE("pretty-print round trip") {
  const char* sources[] = {
      "1 + 2*x - x^2/3",
      "-e2/(abs(x) + 1e-4)",
      "exp(-(x-0.5)^2/0.01) * 0.3",
      "sqrt(abs(x)) - -x",
      "2^x^0.5",
      "pi*x/7 - 0.1",
  };
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (const char* src : sources) {
    const Expr a = parse_expr(src);
    const Expr b = parse_expr(a.to_string());
    CHECK(b.to_string() == a.to_string());
    for (int i = 0; i < 100; ++i) {
      const double x = dist(rng);
      const double va = a(x), vb = b(x);
      if (std::isnan(va)) CHECK(std::isnan(vb));
      else CHECK(vb == va);
    }
  }
}
