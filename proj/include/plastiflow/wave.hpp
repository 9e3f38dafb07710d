#pragma once

#include "plastiflow/expr.hpp"
#include "plastiflow/pde.hpp"

namespace plastiflow::solutions {

enum class WaveSub { AddGen, AddA1_0, AddA2_0, AddQuad, MultE, MultF };

// theta = J(a1 x + a2 y).
struct WaveParams {
  double a1 = 1, a2 = 1;
  double c1 = 0.5, c2 = 0, c3 = 0;
  double k = 0.0027;
  WaveSub sub = WaveSub::AddGen;
  double c4 = 0, c5 = 0, c6 = 0, c7 = 0;
  // ADD_QUAD only.
  double omega1 = 0, omega2 = 0, omega3 = 0, omega4 = 0;
  expr::FuncSlot zeta1, zeta2;
  bool quad_double_angle = true;  // read cos(2(2J)) literally in the G quadrature
  // Quadrature range in xi; the integrands have poles where (a2 - 1) sin 2J + 2 a1 cos 2J = 0.
  double quad_xi_min = -1e300, quad_xi_max = 1e300;
  // Use the velocity formulas exactly as printed (ADD_GEN, ADD_A1_0).
  bool printed = false;
  // Use the printed pressure formula (missing k, radicand a1^2 + a2^2).
  bool printed_sigma = false;

  double lambda() const { return a2 * a2 - a1 * a1; }
  double mu() const { return -2 * a1 * a2; }
  double amp() const { return a1 * a1 + a2 * a2; }  // sqrt(lambda^2 + mu^2)
};

// Angle J(xi) on the branch 2J = atan2(mu t + lambda r, lambda t - mu r), t = c1 xi + c2,
// r = sqrt(lambda^2 + mu^2 - t^2).
double wave_J(double xi, const WaveParams& p);
double wave_J_prime(double xi, const WaveParams& p);
// Open interval of xi where the square root is real and positive.
std::pair<double, double> wave_xi_interval(const WaveParams& p);

double wave_sigma(double x, double y, const WaveParams& p);
double wave_sigma_printed(double x, double y, const WaveParams& p);

void validate(const WaveParams& p);
pde::FieldMap make_wave_solution(const WaveParams& p);

}  // namespace plastiflow::solutions
