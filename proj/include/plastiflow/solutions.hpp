#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "plastiflow/pde.hpp"
#include "plastiflow/similarity.hpp"
#include "plastiflow/tau.hpp"
#include "plastiflow/wave.hpp"

namespace plastiflow::solutions {

inline constexpr const char* kVersion = "1.0.0";

struct Rect {
  double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
};

// Named real parameters and function strings as read from a scenario.
struct ParamSet {
  std::map<std::string, double> values;
  std::map<std::string, std::string> functions;
};

struct FamilyInfo {
  std::string id;
  std::string summary;
  std::vector<std::pair<std::string, double>> params;  // name, default
  // name, default expression ("" = unset unless given)
  std::vector<std::pair<std::string, std::string>> functions;
  Rect region;  // default verification region
  std::vector<std::string> deviations;  // corrections applied to the printed formulas
};

const std::vector<FamilyInfo>& families();
const FamilyInfo& family_info(const std::string& id);  // ParamError if unknown

// Builds the field map; unknown parameter or function names raise ParamError.
pde::FieldMap build_family(const std::string& id, const ParamSet& params);

struct VerifyOptions {
  Rect region;
  int n = 100;
  double tol_analytic = 1e-6;
  double tol_fd = 1e-4;
  double tol_compat = 1e-4;
  std::uint64_t seed = 1;
  double min_abs_x = 0;  // reject samples with |x| below this
  double fd_h = 0;       // 0 = scaled default
};

struct SolutionReport {
  std::string version = kVersion;
  std::string family;
  ParamSet params;
  std::uint64_t seed = 0;
  Rect region;
  int requested = 0, samples = 0;
  bool analytic = false;
  pde::Residual4 max_analytic, max_fd;
  double max_compat = 0;
  double tol_analytic = 0, tol_fd = 0, tol_compat = 0;
  bool pass = false;
  std::vector<std::string> notes;

  std::string status() const { return pass ? "VERIFIED" : "UNVERIFIED"; }
  std::string to_text() const;
  std::string to_json() const;
};

SolutionReport verify_field(const pde::FieldMap& F, const VerifyOptions& opt);
SolutionReport verify_family(const std::string& id, const ParamSet& params, const VerifyOptions& opt);

// Test fixtures: constant fields, and rigid rotation u = -omega y, v = omega x.
pde::FieldMap make_constant_solution(double theta, double sigma, double u, double v, double k);
pde::FieldMap make_rotation_solution(double omega, double theta, double sigma, double k);

}  // namespace plastiflow::solutions
