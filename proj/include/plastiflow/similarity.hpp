#pragma once

#include <utility>
#include <vector>

#include "plastiflow/expr.hpp"
#include "plastiflow/pde.hpp"

namespace plastiflow::solutions {

enum class SimSub { AddA, AddB, MultA, MultC, C0AddA, C0AddB, C0MultA, C0MultB, C0MultC };

bool is_c0(SimSub s);

// theta = J(y/x). For c1 != 0 the angle follows one branch of the implicit
// relation; for c1 = 0 theta = 1/2 atan2(2xy, x^2 - y^2).
struct SimilarityParams {
  SimSub sub = SimSub::AddA;
  double c1 = 1.5, c2 = 0, c3 = 0;
  double k = 0.1;
  double c4 = 0, c5 = 0, c6 = 0, c7 = 0;
  double omega1 = 0;  // printed MULT_C coefficient
  double omega2 = 0;  // C0_MULT_C exponent
  // Branch seed: J at xi0 is the root nearest seed_J. Also the lower limit of
  // every quadrature in xi.
  double xi0 = 0.5, seed_J = 0.0;
  // Range of xi covered by the branch table or the quadratures.
  double xi_min = 0.05, xi_max = 20.0;
  expr::FuncSlot F, H, K, P, Q;
  bool printed = false;        // velocity formulas exactly as printed
  bool printed_sigma = false;  // pressure exactly as printed
};

// Residual of the corrected implicit relation, wrapped to (-pi/2, pi/2].
double sim_relation(double xi, double J, double c1, double c2);
// Residual of the relation exactly as printed.
double sim_relation_printed(double xi, double J, double c1, double c2);
// Root of the corrected relation at xi nearest seed_J.
double sim_J(double xi, double c1, double c2, double seed_J);
// J'(xi) from the first integral ((xi^2 - 1) sin 2J + 2 xi cos 2J) J' = c1.
double sim_J_prime(double xi, double J, double c1);

// One continuous branch of the implicit relation, tabulated in J from the
// seed and stopped at folds, at xi = 0, and at the requested xi range.
class SimBranch {
 public:
  SimBranch(double c1, double c2, double xi0, double seed_J, double xi_min, double xi_max);

  double J(double xi) const;
  double J_prime(double xi) const;
  double lo() const { return xi_.front(); }
  double hi() const { return xi_.back(); }
  bool contains(double xi) const { return xi > lo() && xi < hi(); }
  double seed_xi() const { return xi0_; }
  double seed_J() const { return J0_; }
  const std::vector<std::string>& stops() const { return stops_; }

 private:
  double c1_, c2_, s_, xi0_, J0_;
  std::vector<double> xi_, J_, psi_;  // sorted by xi; psi is the unwrapped alpha - J
  std::vector<std::string> stops_;
};

double sim_sigma(double x, double y, double J, const SimilarityParams& p);
double sim_sigma_printed(double x, double y, double J, const SimilarityParams& p);

void validate(const SimilarityParams& p);
pde::FieldMap make_similarity_solution(const SimilarityParams& p);

}  // namespace plastiflow::solutions
