#include "plastiflow/pde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "plastiflow/errors.hpp"

namespace plastiflow::pde {

State FieldMap::operator()(double x, double y) const {
  if (!domain(x, y)) throw DomainError(family + ": point outside the domain of definition");
  return eval(x, y);
}

ScalarField FieldMap::theta() const {
  return [f = *this](double x, double y) { return f(x, y).theta; };
}
ScalarField FieldMap::sigma() const {
  return [f = *this](double x, double y) { return f(x, y).sigma; };
}
ScalarField FieldMap::u() const {
  return [f = *this](double x, double y) { return f(x, y).u; };
}
ScalarField FieldMap::v() const {
  return [f = *this](double x, double y) { return f(x, y).v; };
}

double Residual4::max_abs() const {
  return std::max({std::fabs(r_a), std::fabs(r_b), std::fabs(r_c), std::fabs(r_d)});
}

double default_step(double x, double y, double base) {
  return base * std::max({1.0, std::fabs(x), std::fabs(y)});
}

double wrap_half_pi(double a) {
  constexpr double pi = std::numbers::pi;
  double r = std::remainder(a, pi);  // in [-pi/2, pi/2]
  if (r <= -pi / 2) r += pi;
  return r;
}

double fd_partial(const ScalarField& f, double x, double y, Axis axis, double h) {
  double dx = axis == Axis::X ? h : 0, dy = axis == Axis::Y ? h : 0;
  return (f(x + dx, y + dy) - f(x - dx, y - dy)) / (2 * h);
}

double fd_partial_angle(const ScalarField& f, double x, double y, Axis axis, double h) {
  double dx = axis == Axis::X ? h : 0, dy = axis == Axis::Y ? h : 0;
  return wrap_half_pi(f(x + dx, y + dy) - f(x - dx, y - dy)) / (2 * h);
}

Residual4 residual_from(double theta, const Gradients& g, double k) {
  double c = std::cos(2 * theta), s = std::sin(2 * theta);
  Residual4 r;
  r.r_a = g.sigma_x - 2 * k * (g.theta_x * c + g.theta_y * s);
  r.r_b = g.sigma_y - 2 * k * (g.theta_x * s - g.theta_y * c);
  r.r_c = (g.u_y + g.v_x) * s + (g.u_x - g.v_y) * c;
  r.r_d = g.u_x + g.v_y;
  return r;
}

Gradients fd_gradients(const FieldMap& F, double x, double y, double h) {
  State px = F(x + h, y), mx = F(x - h, y), py = F(x, y + h), my = F(x, y - h);
  double d = 2 * h;
  Gradients g;
  g.theta_x = wrap_half_pi(px.theta - mx.theta) / d;
  g.theta_y = wrap_half_pi(py.theta - my.theta) / d;
  g.sigma_x = (px.sigma - mx.sigma) / d;
  g.sigma_y = (py.sigma - my.sigma) / d;
  g.u_x = (px.u - mx.u) / d;
  g.u_y = (py.u - my.u) / d;
  g.v_x = (px.v - mx.v) / d;
  g.v_y = (py.v - my.v) / d;
  return g;
}

Residual4 residual(const FieldMap& F, double x, double y, Scheme scheme) {
  State s = F(x, y);
  if (scheme.kind == Scheme::Analytic) {
    if (!F.has_gradients()) throw MissingGradients(F.family + ": no analytic gradients");
    return residual_from(s.theta, F.gradients(x, y), F.k);
  }
  double h = scheme.h > 0 ? scheme.h : default_step(x, y);
  return residual_from(s.theta, fd_gradients(F, x, y, h), F.k);
}

double mixed_defect(const ScalarField& f, double x, double y, double h) {
  if (h <= 0) h = default_step(x, y, 1e-4);
  // Inner and outer steps differ; with equal steps both orders reduce to the
  // same four-point formula and the check would be vacuous.
  double hi = 0.5 * h;
  auto fx = [&](double X, double Y) { return fd_partial(f, X, Y, Axis::X, hi); };
  auto fy = [&](double X, double Y) { return fd_partial(f, X, Y, Axis::Y, hi); };
  double fxy = (fx(x, y + h) - fx(x, y - h)) / (2 * h);
  double fyx = (fy(x + h, y) - fy(x - h, y)) / (2 * h);
  return std::fabs(fxy - fyx);
}

double compatibility_defect(const FieldMap& F, double x, double y, double h) {
  if (!F.has_gradients()) return mixed_defect(F.sigma(), x, y, h);
  if (h <= 0) h = default_step(x, y, 1e-5);
  for (double dx : {-h, h})
    if (!F.contains(x + dx, y) || !F.contains(x, y + dx))
      throw DomainError(F.family + ": compatibility stencil leaves the domain");
  double sxy = (F.gradients(x, y + h).sigma_x - F.gradients(x, y - h).sigma_x) / (2 * h);
  double syx = (F.gradients(x + h, y).sigma_y - F.gradients(x - h, y).sigma_y) / (2 * h);
  return std::fabs(sxy - syx);
}

}  // namespace plastiflow::pde
