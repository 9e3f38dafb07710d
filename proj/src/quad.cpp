#include "plastiflow/quad.hpp"

#include <algorithm>
#include <cmath>

#include "plastiflow/errors.hpp"

namespace plastiflow::quad {

namespace {

constexpr int kMaxDepth = 48;
// Evaluation budget per call; a pole inside the interval exhausts it quickly.
constexpr long kMaxEvals = 2000000;

double simpson_step(const Fn& f, double a, double b, double fa, double fm, double fb, double whole,
                    double tol, int depth, long& evals) {
  if ((evals += 2) > kMaxEvals) throw SingularityError("adaptive Simpson evaluation budget exceeded");
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  if (!std::isfinite(flm) || !std::isfinite(frm))
    throw SingularityError("integrand not finite inside the interval");
  double left = (m - a) / 6 * (fa + 4 * flm + fm);
  double right = (b - m) / 6 * (fm + 4 * frm + fb);
  double diff = left + right - whole;
  if (std::fabs(diff) <= 15 * tol) return left + right + diff / 15;
  if (depth >= kMaxDepth) throw SingularityError("adaptive Simpson recursion depth exceeded");
  return simpson_step(f, a, m, fa, flm, fm, left, tol / 2, depth + 1, evals) +
         simpson_step(f, m, b, fm, frm, fb, right, tol / 2, depth + 1, evals);
}

double probe(const Fn& f, double t) {
  double v = f(t);
  if (!std::isfinite(v)) throw SingularityError("integrand not finite at an endpoint");
  return v;
}

// Composite Simpson with a fixed number of panels.
double simpson_fixed(const Fn& f, double a, double b, int panels) {
  if (a == b) return 0;
  double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

}  // namespace

double integrate(const Fn& f, double a, double b, double tol) {
  if (a == b) return 0;
  if (b < a) return -integrate(f, b, a, tol);
  double fa = probe(f, a), fb = probe(f, b), m = 0.5 * (a + b), fm = probe(f, m);
  double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  long evals = 3;
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 0, evals);
}

double find_root(const Fn& g, double lo, double hi, double tol) {
  double a = std::min(lo, hi), b = std::max(lo, hi);
  double fa = g(a), fb = g(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if (!(fa * fb < 0)) throw NoBracketError("find_root: g(lo) and g(hi) have the same sign");
  bool force_bisect = false;
  for (int iter = 0; iter < 400; ++iter) {
    double width = b - a;
    double m = 0.5 * (a + b);
    if (width < tol * std::max(1.0, std::fabs(m))) break;
    double s = b - fb * (b - a) / (fb - fa);
    if (force_bisect || !(s > a && s < b)) s = m;
    double fs = g(s);
    if (fs == 0) return s;
    if ((fs < 0) == (fa < 0)) {
      a = s;
      fa = fs;
    } else {
      b = s;
      fb = fs;
    }
    // Bisect next time unless the interpolation step at least halved the bracket.
    force_bisect = !force_bisect && (b - a) > 0.5 * width;
  }
  return std::fabs(fa) < std::fabs(fb) ? a : b;
}

Antiderivative::Antiderivative(Fn f, double xi0, double lo, double hi, double tol, int nodes)
    : f_(std::move(f)), xi0_(xi0), tol_(tol) {
  if (!(lo < hi) || nodes < 2) throw ParamError("antiderivative: empty range");
  if (xi0 < lo || xi0 > hi) throw ParamError("antiderivative: xi0 outside range");
  std::vector<double> grid(nodes), values(nodes);
  for (int i = 0; i < nodes; ++i) {
    grid[i] = lo + (hi - lo) * i / (nodes - 1);
    values[i] = probe(f_, grid[i]);
  }
  // Refine panels where the integrand magnitude changes by more than 1e3.
  nodes_.push_back(grid[0]);
  for (int i = 0; i + 1 < nodes; ++i) {
    double m0 = std::fabs(values[i]), m1 = std::fabs(values[i + 1]);
    double small = std::min(m0, m1), big = std::max(m0, m1);
    if (small > 0 && big > 1e3 * small) {
      for (int k = 1; k < 4; ++k) nodes_.push_back(grid[i] + (grid[i + 1] - grid[i]) * k / 4);
    }
    nodes_.push_back(grid[i + 1]);
  }
  phi_.assign(nodes_.size(), 0.0);
  double panel_tol = tol / static_cast<double>(nodes_.size());
  for (std::size_t i = 1; i < nodes_.size(); ++i)
    phi_[i] = phi_[i - 1] + integrate(f_, nodes_[i - 1], nodes_[i], panel_tol);
  offset_ = raw(xi0_);
}

double Antiderivative::raw(double xi) const {
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), xi);
  std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
  return phi_[i] + simpson_fixed(f_, nodes_[i], xi, 8);
}

double Antiderivative::operator()(double xi) const {
  if (!contains(xi)) throw DomainError("antiderivative queried outside its tabulated range");
  return raw(xi) - offset_;
}

}  // namespace plastiflow::quad
