#pragma once

#include "plastiflow/pde.hpp"

namespace plastiflow::solutions {

// sigma = tau(x, y) - a1 x - a2 y with theta = J(tau) along level lines of tau.
struct TauParams {
  double a1 = 2, a2 = 1;
  double c1 = 1, c2 = 0, c3 = 0;
  double k = 0.5;
  int branch = 1;  // sign of the square root in tau
  double omega1 = 0, omega2 = 0, omega3 = 0, omega4 = 0;
  double c4 = 0, c5 = 0;
  bool printed = false;  // printed kappa3 and velocity coefficients
};

struct TauConstants {
  double lambda, mu;
  double kappa1, kappa2, kappa3;
  double kappa4, kappa5, kappa6, kappa7;
  double omega3;  // the value actually used in u
};

TauConstants tau_constants(const TauParams& p);

// J(s) on the branch selected by root_sign (+1 or -1):
// 2J = atan2(mu s - r lambda R, lambda s + r mu R), R = sqrt(lambda^2 + mu^2 - s^2).
double tau_J(double s, const TauConstants& c, int root_sign);
// tau(x, y): s - c2 where s is the explicit root of the level-line relation.
double tau_solve(double x, double y, const TauParams& p);
// The square-root sign of J(s) consistent with tau_solve at (x, y).
int tau_root_sign(double x, double y, const TauParams& p);
// kappa1 sin 2J + kappa2 cos 2J + x + kappa3 y + c3 at tau.
double tau_relation_residual(double x, double y, double tau, const TauParams& p);

void validate(const TauParams& p);
pde::FieldMap make_tau_solution(const TauParams& p);

}  // namespace plastiflow::solutions
