#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "plastiflow/errors.hpp"
#include "plastiflow/expr.hpp"

using namespace plastiflow;
using namespace plastiflow::expr;

TEST_CASE("precedence and associativity") {
  CHECK(eval(parse("1 + 2*3"), 0) == 7);
  CHECK(eval(parse("2^3^2"), 0) == 512);
  CHECK(eval(parse("-2^2"), 0) == -4);
  CHECK(eval(parse("(1 + 2)*3"), 0) == 9);
  CHECK(eval(parse("8/4/2"), 0) == 1);
  CHECK(eval(parse("pi"), 0) == doctest::Approx(std::numbers::pi));
  CHECK(eval(parse("1e-3*t"), 2) == doctest::Approx(2e-3));
}

TEST_CASE("parse errors report an offset") {
  CHECK_THROWS_AS(parse("1 +"), ParseError);
  CHECK_THROWS_AS(parse("sin(t"), ParseError);
  CHECK_THROWS_AS(parse("foo(t)"), ParseError);
  CHECK_THROWS_AS(parse("x + 1"), ParseError);
  try {
    parse("t + * 2");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.offset == 4);
  }
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval(parse("ln(t)"), -1), EvalError);
  CHECK_THROWS_AS(eval(parse("sqrt(t)"), -1), EvalError);
  CHECK_THROWS_AS(eval(parse("1/t"), 0), EvalError);
}

TEST_CASE("symbolic derivatives") {
  CHECK(eval(differentiate(parse("t^3")), 2) == doctest::Approx(12));
  CHECK(eval(differentiate(parse("sin(2*t)")), 0.3) == doctest::Approx(2 * std::cos(0.6)));
  CHECK(eval(differentiate(parse("t^t")), 2) == doctest::Approx(4 * (std::log(2.0) + 1)));
  CHECK(eval(differentiate(parse("atan(t)")), 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(differentiate(parse("dn(t, 0.5)")), UnsupportedNode);
}

TEST_CASE("function slot falls back to differences for dn") {
  FuncSlot f("dn(t, 0.5)");
  CHECK_FALSE(f.symbolic_d1());
  double u = 0.8, sn = boost::math::jacobi_sn(0.5, u), cn = boost::math::jacobi_cn(0.5, u);
  CHECK(f.d1(u) == doctest::Approx(-0.25 * sn * cn).epsilon(1e-9));
  FuncSlot p("t^2");
  CHECK(p.symbolic_d1());
  CHECK(p.d2(3) == 2);
}

TEST_CASE("dn limits and agreement with boost") {
  CHECK(jacobi_dn(1.7, 0) == 1);
  CHECK(jacobi_dn(1.7, 1) == doctest::Approx(1 / std::cosh(1.7)));
  for (double m : {0.1, 0.5, 0.9, 0.999})
    for (double u : {-5.0, -0.3, 0.0, 0.7, 3.0, 11.0})
      CHECK(jacobi_dn(u, m) == doctest::Approx(boost::math::jacobi_dn(m, u)).epsilon(1e-12));
  CHECK_THROWS_AS(jacobi_dn(1, 1.5), EvalError);
}

TEST_CASE("printing round-trips") {
  for (const char* s : {"-(t - 1)^2", "2^(t/3)", "dn(2*pi*(1 - exp(-2*t^2)), 0.5)", "t - (t - 1)", "1/(t*t)"}) {
    auto e = parse(s);
    auto e2 = parse(to_string(e));
    CHECK(to_string(e2) == to_string(e));
    CHECK(eval(e2, 0.7) == eval(e, 0.7));
  }
}
