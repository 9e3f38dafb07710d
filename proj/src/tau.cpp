#include "plastiflow/tau.hpp"

#include <cmath>

#include "plastiflow/errors.hpp"

namespace plastiflow::solutions {

TauConstants tau_constants(const TauParams& p) {
  double a1 = p.a1, a2 = p.a2, c1 = p.c1, k = p.k, D = a1 * a1 - a2 * a2;
  TauConstants c{};
  c.lambda = 0.5 * c1 * (a2 * a2 - a1 * a1);
  c.mu = k * (a1 * a1 + a2 * a2) / (a2 * a2 - a1 * a1) - c1 * a1 * a2;
  c.kappa1 = c1 * a2 + 2 * k * a1 / D;
  c.kappa2 = (c1 * c1 * D * D - 4 * k * k) / (2 * c1 * a1 * D + 4 * k * a2);
  if (p.printed)
    c.kappa3 = (c1 * a2 * D - 2 * k * a1) / (c1 * a1 * D + 2 * k * a2);
  else
    c.kappa3 = (c1 * a2 * D + 2 * k * a1) / (c1 * a1 * D + 2 * k * a2);
  double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3;
  if (p.printed) {
    c.omega3 = w3;
    c.kappa4 = (w1 - w2) * (a2 * c1 + 2 * k * a1 / D);
    c.kappa5 = 0.5 * (a1 * w1 - a2 * w3) * c1 + (a2 * w1 - a1 * w3) / D;
    c.kappa6 = (a1 * c1 - 2 * k * a2 / D) * w2;
    c.kappa7 = 0.5 * (a1 * w3 - a2 * w1) * c1 + (a2 * w3 - a1 * w1) / D;
  } else {
    c.omega3 = c.kappa3 * (w1 - w2) + w2 / c.kappa3;
    c.kappa4 = c.kappa1 * (w1 - w2);
    c.kappa5 = c.kappa2 * (w1 - w2);
    c.kappa6 = c.kappa1 * w2 / c.kappa3;
    c.kappa7 = c.kappa2 * w2 / c.kappa3;
  }
  return c;
}

void validate(const TauParams& p) {
  if (!(p.k > 0)) throw ParamError("k must be positive");
  if (p.c1 == 0) throw ParamError("tau family requires c1 != 0");
  if (p.a1 * p.a1 == p.a2 * p.a2) throw ParamError("tau family requires a1^2 != a2^2");
  if (p.branch != 1 && p.branch != -1) throw ParamError("branch must be +1 or -1");
  double D = p.a1 * p.a1 - p.a2 * p.a2;
  if (p.c1 * p.a1 * D + 2 * p.k * p.a2 == 0) throw ParamError("kappa3 denominator vanishes");
  TauConstants c = tau_constants(p);
  if (c.kappa3 == 0) throw ParamError("kappa3 vanishes");
  if (c.lambda * c.kappa1 - c.mu * c.kappa2 == 0) throw ParamError("degenerate level-line relation");
}

namespace {

struct Pt {
  double w, K, p, q, root, s;
};

Pt point(double x, double y, const TauParams& P, const TauConstants& c) {
  Pt r{};
  r.w = x + c.kappa3 * y + P.c3;
  r.K = c.kappa1 * c.kappa1 + c.kappa2 * c.kappa2;
  r.p = c.mu * c.kappa1 + c.lambda * c.kappa2;
  r.q = c.lambda * c.kappa1 - c.mu * c.kappa2;
  double rad = r.K - r.w * r.w;
  if (rad < 0) throw DomainError("tau family: point outside the band |x + kappa3 y + c3| < |kappa|");
  r.root = std::sqrt(rad);
  r.s = (-r.p * r.w + P.branch * std::abs(r.q) * r.root) / r.K;
  return r;
}

int sgn(double v) { return v < 0 ? -1 : 1; }

}  // namespace

double tau_J(double s, const TauConstants& c, int root_sign) {
  double A2 = c.lambda * c.lambda + c.mu * c.mu, rad = A2 - s * s;
  if (rad < 0) throw DomainError("tau family: |tau + c2| exceeds sqrt(lambda^2 + mu^2)");
  double R = std::sqrt(rad);
  return 0.5 * std::atan2(c.mu * s - root_sign * c.lambda * R, c.lambda * s + root_sign * c.mu * R);
}

double tau_solve(double x, double y, const TauParams& p) {
  return point(x, y, p, tau_constants(p)).s - p.c2;
}

int tau_root_sign(double x, double y, const TauParams& p) {
  Pt r = point(x, y, p, tau_constants(p));
  return sgn(r.q) * sgn(std::abs(r.q) * r.w + p.branch * r.p * r.root);
}

double tau_relation_residual(double x, double y, double tau, const TauParams& p) {
  TauConstants c = tau_constants(p);
  double J = tau_J(tau + p.c2, c, tau_root_sign(x, y, p));
  return c.kappa1 * std::sin(2 * J) + c.kappa2 * std::cos(2 * J) + x + c.kappa3 * y + p.c3;
}

pde::FieldMap make_tau_solution(const TauParams& p) {
  validate(p);
  TauConstants c = tau_constants(p);
  pde::FieldMap F;
  F.k = p.k;
  F.domain = [p, c](double x, double y) {
    double w = x + c.kappa3 * y + p.c3;
    return c.kappa1 * c.kappa1 + c.kappa2 * c.kappa2 - w * w > 0;
  };
  F.eval = [p, c](double x, double y) {
    Pt r = point(x, y, p, c);
    int rs = sgn(r.q) * sgn(std::abs(r.q) * r.w + p.branch * r.p * r.root);
    double J = tau_J(r.s, c, rs), S = std::sin(2 * J), C = std::cos(2 * J);
    pde::State st;
    st.theta = J;
    st.sigma = r.s - p.c2 - p.a1 * x - p.a2 * y;
    st.u = (p.omega1 - p.omega2) * x + (c.omega3 - p.omega4) * y + c.kappa4 * S + c.kappa5 * C + p.c4;
    st.v = p.omega4 * x + p.omega2 * y + c.kappa6 * S + c.kappa7 * C + p.c5;
    return st;
  };
  F.gradients = [p, c](double x, double y) {
    Pt r = point(x, y, p, c);
    int rs = sgn(r.q) * sgn(std::abs(r.q) * r.w + p.branch * r.p * r.root);
    double J = tau_J(r.s, c, rs), S = std::sin(2 * J), C = std::cos(2 * J);
    double s_w = (-r.p - p.branch * std::abs(r.q) * r.w / r.root) / r.K;
    double den = c.kappa1 * C - c.kappa2 * S;
    if (den == 0) throw SingularityError("tau family: level line tangent to a characteristic");
    double J_w = -1 / (2 * den);
    double dS = 2 * C * J_w, dC = -2 * S * J_w;
    pde::Gradients g;
    g.theta_x = J_w;
    g.theta_y = c.kappa3 * J_w;
    g.sigma_x = s_w - p.a1;
    g.sigma_y = c.kappa3 * s_w - p.a2;
    double du = c.kappa4 * dS + c.kappa5 * dC, dv = c.kappa6 * dS + c.kappa7 * dC;
    g.u_x = (p.omega1 - p.omega2) + du;
    g.u_y = (c.omega3 - p.omega4) + c.kappa3 * du;
    g.v_x = p.omega4 + dv;
    g.v_y = p.omega2 + c.kappa3 * dv;
    return g;
  };
  return F;
}

}  // namespace plastiflow::solutions
