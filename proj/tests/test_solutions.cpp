#include "doctest.h"
#include "json.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/solutions.hpp"

using namespace plastiflow;
using namespace plastiflow::solutions;

TEST_CASE("registry") {
  for (const char* id : {"wave/add_gen", "wave/add_a1_0", "wave/add_a2_0", "wave/add_quad", "wave/mult_e",
                         "wave/mult_f", "sim/add_a", "sim/add_b", "sim/mult_a", "sim/mult_c", "sim/c0_add_a",
                         "sim/c0_add_b", "sim/c0_mult_a", "sim/c0_mult_b", "sim/c0_mult_c", "tau/add",
                         "fixture/constant", "fixture/rotation", "fixture/perturbed"})
    CHECK_NOTHROW(family_info(id));
  CHECK_THROWS_AS(family_info("wave/none"), ParamError);
}

TEST_CASE("unknown parameter names are rejected") {
  ParamSet ps;
  ps.values = {{"a3", 1}};
  CHECK_THROWS_AS(build_family("wave/add_gen", ps), ParamError);
  ParamSet pf;
  pf.functions = {{"G", "t"}};
  CHECK_THROWS_AS(build_family("sim/c0_add_a", pf), ParamError);
}

TEST_CASE("perturbed fixture fails") {
  VerifyOptions v;
  v.region = family_info("fixture/perturbed").region;
  auto rep = verify_family("fixture/perturbed", {}, v);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_analytic.r_a == doctest::Approx(1e-3));
}

TEST_CASE("reports are deterministic and complete") {
  VerifyOptions v;
  v.region = {-1, 1, -1, 1};
  v.seed = 11;
  auto a = verify_family("fixture/rotation", {}, v);
  auto b = verify_family("fixture/rotation", {}, v);
  CHECK(a.to_text() == b.to_text());
  CHECK(a.to_json() == b.to_json());
  auto j = nlohmann::json::parse(a.to_json());
  CHECK(j["family"] == "fixture/rotation");
  CHECK(j["seed"] == 11);
  CHECK(j["version"] == kVersion);
  CHECK(j["status"] == "VERIFIED");
  auto text = a.to_text();
  for (const char* key : {"version=", "family=", "seed=11", "samples=100", "status=VERIFIED", "verdict=pass"})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("empty sampling domain raises") {
  VerifyOptions v;
  v.region = {5, 6, 5, 6};
  CHECK_THROWS_AS(verify_family("wave/add_gen", {}, v), EmptyDomainError);
}
