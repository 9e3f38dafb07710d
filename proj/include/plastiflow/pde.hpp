#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace plastiflow::pde {

using ScalarField = std::function<double(double, double)>;

struct State {
  double theta = 0, sigma = 0, u = 0, v = 0;
};

struct Gradients {
  double theta_x = 0, theta_y = 0, sigma_x = 0, sigma_y = 0;
  double u_x = 0, u_y = 0, v_x = 0, v_y = 0;
};

// The four dependent fields of a solution over a planar domain.
// theta only matters modulo pi; finite differences of theta are taken mod pi.
struct FieldMap {
  std::string family;
  std::function<State(double, double)> eval;
  std::function<bool(double, double)> domain;
  std::function<Gradients(double, double)> gradients;  // empty when not available
  double k = 1.0;
  std::vector<std::string> notes;  // deviations from the printed formulas, etc.

  State operator()(double x, double y) const;  // checks the domain
  bool contains(double x, double y) const { return domain(x, y); }
  bool has_gradients() const { return static_cast<bool>(gradients); }
  ScalarField theta() const;
  ScalarField sigma() const;
  ScalarField u() const;
  ScalarField v() const;
};

struct Residual4 {
  double r_a = 0, r_b = 0, r_c = 0, r_d = 0;
  double max_abs() const;
};

enum class Axis { X, Y };

struct Scheme {
  enum Kind { Analytic, FD } kind = Analytic;
  double h = 0;  // 0 means the default 1e-5 * max(1, |x|, |y|)
  static Scheme analytic() { return {Analytic, 0}; }
  static Scheme fd(double h = 0) { return {FD, h}; }
};

double default_step(double x, double y, double base = 1e-5);

double fd_partial(const ScalarField& f, double x, double y, Axis axis, double h);
// Central difference of an angle defined modulo pi.
double fd_partial_angle(const ScalarField& f, double x, double y, Axis axis, double h);

// Left-hand sides of the governing system from explicit partials.
Residual4 residual_from(double theta, const Gradients& g, double k);
Residual4 residual(const FieldMap& F, double x, double y, Scheme scheme = Scheme::analytic());
Gradients fd_gradients(const FieldMap& F, double x, double y, double h);

// |d/dy(f_x) - d/dx(f_y)| by nested central differences.
double mixed_defect(const ScalarField& f, double x, double y, double h = 0);
double compatibility_defect(const FieldMap& F, double x, double y, double h = 0);

// Wraps an angle difference to (-pi/2, pi/2].
double wrap_half_pi(double a);

}  // namespace plastiflow::pde
