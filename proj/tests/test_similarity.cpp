#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/similarity.hpp"
#include "plastiflow/solutions.hpp"

using namespace plastiflow;
using namespace plastiflow::solutions;

TEST_CASE("branch roots satisfy the relation and follow the seed") {
  SimBranch b(1.5, 0, 0.5, 0, 0.05, 20);
  CHECK(b.lo() < 0.5);
  CHECK(b.hi() > 0.5);
  CHECK(b.J(0.5) == doctest::Approx(b.seed_J()));
  for (double xi = b.lo() + 0.01; xi < b.hi() - 0.01; xi += 0.05) {
    CHECK(std::abs(sim_relation(xi, b.J(xi), 1.5, 0)) < 1e-12);
    CHECK(b.J_prime(xi) == doctest::Approx(sim_J_prime(xi, b.J(xi), 1.5)));
  }
  CHECK_FALSE(b.stops().empty());
  CHECK_THROWS_AS(b.J(b.hi() + 0.1), DomainError);
}

TEST_CASE("direct solve agrees with the branch at the seed") {
  SimBranch b(1.5, 0, 0.5, 0, 0.05, 20);
  CHECK(sim_J(0.5, 1.5, 0, 0) == doctest::Approx(b.J(0.5)).epsilon(1e-12));
}

TEST_CASE("printed relation is inconsistent with the first integral") {
  // Solve the printed relation near the seed and difference it.
  auto solve = [](double xi, double near) {
    auto f = [xi](double J) { return sim_relation_printed(xi, J, 1.5, 0); };
    double best = NAN;
    for (double a = near - 1; a < near + 1; a += 1e-3) {
      double b = a + 1e-3, fa = f(a), fb = f(b);
      // Sign changes across poles have large values on both sides.
      if (fa * fb > 0 || std::abs(fa) > 1 || std::abs(fb) > 1) continue;
      for (int i = 0; i < 100; ++i) {
        double m = 0.5 * (a + b);
        (f(a) * f(m) <= 0 ? b : a) = m;
      }
      if (std::isnan(best) || std::abs(a - near) < std::abs(best - near)) best = a;
    }
    return best;
  };
  double xi = 0.5, h = 1e-5, J = solve(xi, -0.2);
  REQUIRE(std::abs(sim_relation_printed(xi, J, 1.5, 0)) < 1e-8);
  double Jp = (solve(xi + h, J) - solve(xi - h, J)) / (2 * h);
  double lhs = ((xi * xi - 1) * std::sin(2 * J) + 2 * xi * std::cos(2 * J)) * Jp;
  CHECK(std::abs(lhs - 1.5) > 0.1);
}

TEST_CASE("c1 within [-1, 1] is rejected") {
  ParamSet ps;
  ps.values = {{"c1", 0.5}};
  CHECK_THROWS_AS(build_family("sim/add_a", ps), ParamError);
  ps.values = {{"c1", -1}};
  CHECK_THROWS_AS(build_family("sim/mult_a", ps), ParamError);
}

TEST_CASE("angle for c1 = 0 is the polar angle") {
  auto F = build_family("sim/c0_mult_b", {});
  for (auto [x, y] : {std::pair{1.0, 0.5}, std::pair{0.3, -1.7}, std::pair{1.9, 1.9}})
    CHECK(oracle::mod_pi_distance(F(x, y).theta, std::atan2(y, x)) < 1e-14);
}

TEST_CASE("every subfamily verifies with default parameters") {
  for (const auto& fi : families()) {
    if (fi.id.rfind("sim/", 0) != 0) continue;
    VerifyOptions v;
    v.region = fi.region;
    v.min_abs_x = 0.2;
    auto rep = verify_family(fi.id, {}, v);
    CHECK_MESSAGE(rep.pass, fi.id);
  }
}

TEST_CASE("printed forms are reported unverified") {
  VerifyOptions v;
  v.region = {0.2, 2, 0.05, 2};
  v.min_abs_x = 0.2;
  for (auto [id, key] : {std::pair{"sim/add_b", "printed"}, std::pair{"sim/mult_a", "printed_sigma"},
                         std::pair{"sim/c0_mult_a", "printed"}}) {
    ParamSet ps;
    ps.values = {{key, 1}};
    CHECK_MESSAGE(verify_family(id, ps, v).status() == "UNVERIFIED", id);
  }
}
