#include <cmath>
#include <numbers>

#include "doctest.h"
#include "plastiflow/errors.hpp"
#include "plastiflow/pde.hpp"
#include "plastiflow/solutions.hpp"

using namespace plastiflow;
using namespace plastiflow::pde;

TEST_CASE("angle wrapping") {
  CHECK(wrap_half_pi(0.1) == doctest::Approx(0.1));
  CHECK(wrap_half_pi(std::numbers::pi + 0.1) == doctest::Approx(0.1));
  CHECK(wrap_half_pi(-std::numbers::pi + 0.2) == doctest::Approx(0.2));
}

TEST_CASE("angle differences ignore multiples of pi") {
  ScalarField th = [](double x, double) { return x > 0 ? x - std::numbers::pi : x; };
  CHECK(fd_partial_angle(th, 0, 0, Axis::X, 1e-5) == doctest::Approx(1));
  CHECK(fd_partial([](double x, double y) { return x * y; }, 2, 3, Axis::Y, 1e-5) == doctest::Approx(2));
}

TEST_CASE("fixtures have zero residual in both schemes") {
  auto C = solutions::make_constant_solution(0.3, 1, 2, -1, 0.7);
  auto R = solutions::make_rotation_solution(2, 0.1, 0.5, 1);
  for (const auto* F : {&C, &R}) {
    CHECK(residual(*F, 0.2, -0.4).max_abs() == 0);
    CHECK(residual(*F, 0.2, -0.4, Scheme::fd()).max_abs() < 1e-9);
    CHECK(compatibility_defect(*F, 0.2, -0.4) < 1e-9);
  }
}

TEST_CASE("residual formula") {
  Gradients g;
  g.sigma_x = 1;
  g.u_x = 2;
  g.v_y = -2;
  auto r = residual_from(0, g, 1);
  CHECK(r.r_a == 1);
  CHECK(r.r_b == 0);
  CHECK(r.r_c == 4);
  CHECK(r.r_d == 0);
}

TEST_CASE("analytic residual requires gradients") {
  FieldMap F;
  F.family = "test";
  F.eval = [](double, double) { return State{}; };
  F.domain = [](double x, double) { return x > 0; };
  CHECK_THROWS_AS(residual(F, 1, 0), MissingGradients);
  CHECK_THROWS_AS(F(-1, 0), DomainError);
}

TEST_CASE("mixed derivatives commute for smooth fields") {
  CHECK(mixed_defect([](double x, double y) { return std::sin(x * y) + x * x * y; }, 0.3, 0.8) < 1e-5);
}
