#pragma once

#include <functional>
#include <vector>

namespace plastiflow::quad {

using Fn = std::function<double(double)>;

// Adaptive Simpson; swapping a and b negates the result.
double integrate(const Fn& f, double a, double b, double tol = 1e-10);

// Safeguarded bisection/secant hybrid on a sign-changing bracket.
double find_root(const Fn& g, double lo, double hi, double tol = 1e-12);

// Cumulative integral Phi(xi) = int_{xi0}^{xi} f over a fixed range.
// Node values come from adaptive Simpson; point queries add a fixed-panel
// Simpson correction from the nearest node below, which keeps Phi smooth
// enough for finite differencing.
class Antiderivative {
 public:
  Antiderivative() = default;
  Antiderivative(Fn f, double xi0, double lo, double hi, double tol = 1e-10, int nodes = 2048);

  double operator()(double xi) const;
  const Fn& integrand() const { return f_; }
  double lo() const { return nodes_.front(); }
  double hi() const { return nodes_.back(); }
  double xi0() const { return xi0_; }
  double tol() const { return tol_; }
  bool contains(double xi) const { return !nodes_.empty() && xi >= lo() && xi <= hi(); }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  double raw(double xi) const;
  Fn f_;
  double xi0_ = 0, tol_ = 1e-10, offset_ = 0;
  std::vector<double> nodes_, phi_;
};

}  // namespace plastiflow::quad
