#include "plastiflow/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "plastiflow/errors.hpp"
#include "plastiflow/quad.hpp"

namespace plastiflow::solutions {

namespace {

constexpr double kPi = std::numbers::pi;

double sroot(double c1) {
  if (std::abs(c1) <= 1) throw ParamError("similarity family with c1 != 0 requires |c1| > 1");
  return std::sqrt(c1 * c1 - 1);
}

// psi = alpha - J as a function of J, defined modulo pi.
double psi_raw(double J, double c1, double c2, double s) {
  double b = s * (c2 - J) / c1;
  return std::atan2(s * std::sin(b) + std::cos(b), c1 * std::cos(b));
}

// Below this slope d(alpha)/dJ a node counts as too close to a fold.
constexpr double kFoldSlope = 0.05;
constexpr double kStep = 2e-4;
constexpr int kMaxSteps = 200000;

}  // namespace

bool is_c0(SimSub s) {
  switch (s) {
    case SimSub::C0AddA:
    case SimSub::C0AddB:
    case SimSub::C0MultA:
    case SimSub::C0MultB:
    case SimSub::C0MultC:
      return true;
    default:
      return false;
  }
}

double sim_relation(double xi, double J, double c1, double c2) {
  double s = sroot(c1), psi = std::atan(xi) - J;
  double lhs = std::atan2(c1 * std::sin(psi) - std::cos(psi), s * std::cos(psi));
  return pde::wrap_half_pi(lhs - s * (c2 - J) / c1);
}

double sim_relation_printed(double xi, double J, double c1, double c2) {
  double s = sroot(c1), t = std::tan(J);
  return (t - xi) * s / ((t * xi + 1) * c1 - xi + t) - std::tan(s * (c2 - J) / c1);
}

double sim_J(double xi, double c1, double c2, double seed_J) {
  auto r = [&](double J) { return sim_relation(xi, J, c1, c2); };
  const int n = 4000;
  double best = NAN, best_dist = INFINITY;
  double a = seed_J - kPi / 2, ra = r(a);
  for (int i = 1; i <= n; ++i) {
    double b = seed_J - kPi / 2 + kPi * i / n, rb = r(b);
    // Skip the jumps of the wrapped residual.
    if (ra == 0 || (ra * rb < 0 && std::abs(ra - rb) < 1.0)) {
      double root = ra == 0 ? a : quad::find_root(r, a, b, 1e-15);
      if (std::abs(root - seed_J) < best_dist) {
        best_dist = std::abs(root - seed_J);
        best = root;
      }
    }
    a = b;
    ra = rb;
  }
  if (std::isnan(best)) throw NoRootError("no branch of the implicit relation at xi = " + std::to_string(xi));
  return best;
}

double sim_J_prime(double xi, double J, double c1) {
  double den = (xi * xi - 1) * std::sin(2 * J) + 2 * xi * std::cos(2 * J);
  if (den == 0) throw SingularityError("J' is infinite at a fold of the branch");
  return c1 / den;
}

SimBranch::SimBranch(double c1, double c2, double xi0, double seed_J, double xi_min, double xi_max)
    : c1_(c1), c2_(c2), s_(sroot(c1)), xi0_(xi0) {
  if (!(xi_min < xi0 && xi0 < xi_max)) throw ParamError("xi0 must lie inside (xi_min, xi_max)");
  if (xi0 == 0) throw ParamError("xi0 must be nonzero");
  J0_ = sim_J(xi0, c1, c2, seed_J);
  double alpha0 = std::atan(xi0);
  double psi0 = alpha0 - J0_;

  struct Node {
    double alpha, J, psi;
  };
  double dir_sign = 0;
  auto walk = [&](double dJ, std::vector<Node>& out) {
    double J = J0_, psi = psi0, alpha = alpha0;
    double slope_sign = 0;
    for (int i = 0; i < kMaxSteps; ++i) {
      double Jn = J + dJ;
      double pn = psi + pde::wrap_half_pi(psi_raw(Jn, c1_, c2_, s_) - psi);
      double an = Jn + pn;
      double slope = (an - alpha) / dJ;
      if (slope_sign == 0) slope_sign = slope > 0 ? 1 : -1;
      if (slope * slope_sign <= 0) {
        stops_.push_back("fold");
        break;
      }
      if (an <= -kPi / 2 || an >= kPi / 2) {
        stops_.push_back("x = 0");
        break;
      }
      if ((an > 0) != (alpha0 > 0) || an == 0) {
        stops_.push_back("y = 0");
        break;
      }
      double xin = std::tan(an);
      if (xin < xi_min || xin > xi_max) {
        stops_.push_back("xi range");
        break;
      }
      if (std::abs(slope) < kFoldSlope) {
        stops_.push_back("near fold");
        break;
      }
      J = Jn;
      psi = pn;
      alpha = an;
      out.push_back({alpha, J, psi});
    }
    if (dir_sign == 0) dir_sign = slope_sign;
  };
  std::vector<Node> fwd, bwd;
  walk(kStep, fwd);
  walk(-kStep, bwd);
  std::vector<Node> all(bwd.rbegin(), bwd.rend());
  all.push_back({alpha0, J0_, psi0});
  all.insert(all.end(), fwd.begin(), fwd.end());
  if (all.size() < 3) throw EmptyDomainError("branch of the implicit relation is too short");
  if (all.front().alpha > all.back().alpha) std::reverse(all.begin(), all.end());
  for (const Node& n : all) {
    xi_.push_back(std::tan(n.alpha));
    J_.push_back(n.J);
    psi_.push_back(n.psi);
  }
}

double SimBranch::J(double xi) const {
  if (!contains(xi)) throw DomainError("xi outside the tabulated branch");
  auto it = std::upper_bound(xi_.begin(), xi_.end(), xi);
  size_t i = static_cast<size_t>(it - xi_.begin()) - 1;
  double Ja = J_[i], Jb = J_[i + 1], ref = psi_[i], target = std::atan(xi);
  auto g = [&](double J) {
    return J + ref + pde::wrap_half_pi(psi_raw(J, c1_, c2_, s_) - ref) - target;
  };
  double ga = g(Ja), gb = g(Jb);
  if (ga == 0) return Ja;
  if (gb == 0) return Jb;
  if (ga * gb > 0) throw BranchJumpError("branch bracket lost its sign change");
  return quad::find_root(g, Ja, Jb, 1e-15);
}

double SimBranch::J_prime(double xi) const { return sim_J_prime(xi, J(xi), c1_); }

double sim_sigma(double x, double y, double J, const SimilarityParams& p) {
  if (p.c1 == 0) return -2 * p.k * std::atan(y / x) + p.c2;
  double psi = std::atan(y / x) - J;
  double m = std::abs(p.c1 - std::sin(2 * psi));
  return -p.k * p.c1 * std::log((x * x + y * y) * m) + p.c3;
}

double sim_sigma_printed(double x, double y, double J, const SimilarityParams& p) {
  if (p.c1 == 0) return -2 * p.k * std::atan(y / x) + p.c2;
  double xi = y / x;
  return p.k * (xi * std::cos(2 * J) - std::sin(2 * J) - 2 * p.c1 * std::log(std::abs(x))) + p.c3;
}

void validate(const SimilarityParams& p) {
  if (!(p.k > 0)) throw ParamError("k must be positive");
  if (is_c0(p.sub)) {
    if (p.c1 != 0) throw ParamError("this subfamily requires c1 = 0");
    if (!(p.xi_min < p.xi0 && p.xi0 < p.xi_max)) throw ParamError("xi0 must lie inside (xi_min, xi_max)");
  } else {
    sroot(p.c1);
  }
  auto need = [](const expr::FuncSlot& f, const char* name) {
    if (f.empty()) throw ParamError(std::string("missing function ") + name);
  };
  switch (p.sub) {
    case SimSub::C0AddA:
    case SimSub::C0MultB:
      need(p.F, "F");
      break;
    case SimSub::C0AddB:
      need(p.H, "H");
      need(p.K, "K");
      break;
    case SimSub::C0MultA:
      need(p.P, "P");
      need(p.Q, "Q");
      break;
    default:
      break;
  }
}

namespace {

// xi = y/x: d xi/dx = -xi/x, d xi/dy = 1/x.
struct Xi {
  double xi, dx, dy;
};
Xi xi_of(double x, double y) { return {y / x, -y / (x * x), 1 / x}; }

pde::FieldMap make_c1(const SimilarityParams& p) {
  auto br = std::make_shared<SimBranch>(p.c1, p.c2, p.xi0, p.seed_J, p.xi_min, p.xi_max);
  pde::FieldMap F;
  F.k = p.k;
  for (const auto& s : br->stops()) F.notes.push_back("branch end: " + s);

  const double c1 = p.c1;
  std::shared_ptr<quad::Antiderivative> I1, I2;
  double lo = br->lo(), hi = br->hi(), inset = 1e-9 * (hi - lo);
  bool need_I1 = true, need_I2 = p.sub == SimSub::AddA;
  if (need_I1)
    I1 = std::make_shared<quad::Antiderivative>(
        [br, c1](double xi) {
          double J = br->J(xi);
          return std::sin(2 * J) * sim_J_prime(xi, J, c1) / xi;
        },
        br->seed_xi(), lo + inset, hi - inset);
  if (need_I2)
    I2 = std::make_shared<quad::Antiderivative>(
        [br, c1](double xi) {
          double J = br->J(xi);
          return xi * std::sin(2 * J) * sim_J_prime(xi, J, c1);
        },
        br->seed_xi(), lo + inset, hi - inset);

  F.domain = [br, I1](double x, double y) {
    if (x == 0 || y == 0) return false;
    double xi = y / x;
    return br->contains(xi) && I1->contains(xi);
  };

  // Velocity pieces as functions of xi plus explicit x, y terms.
  // Each returns {u, v, du/dxi, dv/dxi, du_x, du_y, dv_x, dv_y} where the last
  // four are the explicit (non-xi) partials.
  struct Vel {
    double u, v, u_xi, v_xi, ux, uy, vx, vy;
  };
  SimilarityParams q = p;
  auto vel = [q, I1, I2](double x, double y, double xi, double J, double Jp) {
    double C = std::cos(2 * J), S = std::sin(2 * J), c1 = q.c1;
    double c4 = q.c4, c5 = q.c5, c6 = q.c6, c7 = q.c7;
    Vel r{};
    double dC = -2 * S * Jp;
    switch (q.sub) {
      case SimSub::AddA:
        r.u = -c5 * C / (2 * c1) + (c6 / c1) * (*I1)(xi) + c6 * std::log(std::abs(y)) - c4 * y + c7;
        r.u_xi = -c5 * dC / (2 * c1) + (c6 / c1) * S * Jp / xi;
        r.uy = c6 / y - c4;
        r.v = c5 * std::log(std::abs(x)) + c4 * x + (c5 / c1) * (*I2)(xi) - c6 * C / (2 * c1);
        r.v_xi = (c5 / c1) * xi * S * Jp - c6 * dC / (2 * c1);
        r.vx = c5 / x + c4;
        break;
      case SimSub::AddB: {
        double f = q.printed ? 1.0 : 0.5;
        r.u = (c1 + 1) * c4 * std::log(std::abs(y)) + c4 * (c1 + 1) * (*I1)(xi) / c1 + c5;
        r.u_xi = c4 * (c1 + 1) * S * Jp / (c1 * xi);
        r.uy = (c1 + 1) * c4 / y;
        r.v = -f * c4 * (c1 + 1) * C / c1 + c6;
        r.v_xi = -f * c4 * (c1 + 1) * dC / c1;
        break;
      }
      case SimSub::MultA:
        r.u = 2 * c4 * (*I1)(xi) + c5 * y + 2 * c1 * c4 * std::log(std::abs(y)) + c6;
        r.u_xi = 2 * c4 * S * Jp / xi;
        r.uy = c5 + 2 * c1 * c4 / y;
        r.v = -c5 * x - c4 * C + c7;
        r.v_xi = -c4 * dC;
        r.vx = -c5;
        break;
      case SimSub::MultC: {
        double w = q.printed ? q.omega1 : c4;
        r.u = -c4 * std::log(std::abs(y)) - (c4 / c1) * (*I1)(xi) + c5;
        r.u_xi = -(c4 / c1) * S * Jp / xi;
        r.uy = -c4 / y;
        r.v = w * C / (2 * c1) + c6;
        r.v_xi = w * dC / (2 * c1);
        break;
      }
      default:
        break;
    }
    return r;
  };

  F.eval = [q, br, vel](double x, double y) {
    double xi = y / x, J = br->J(xi), Jp = sim_J_prime(xi, J, q.c1);
    Vel r = vel(x, y, xi, J, Jp);
    pde::State s;
    s.theta = J;
    s.sigma = q.printed_sigma ? sim_sigma_printed(x, y, J, q) : sim_sigma(x, y, J, q);
    s.u = r.u;
    s.v = r.v;
    return s;
  };
  F.gradients = [q, br, vel](double x, double y) {
    Xi d = xi_of(x, y);
    double J = br->J(d.xi), Jp = sim_J_prime(d.xi, J, q.c1);
    Vel r = vel(x, y, d.xi, J, Jp);
    pde::Gradients g;
    g.theta_x = Jp * d.dx;
    g.theta_y = Jp * d.dy;
    if (q.printed_sigma) {
      double C = std::cos(2 * J), S = std::sin(2 * J);
      double ds = q.k * (C - 2 * d.xi * S * Jp - 2 * C * Jp);
      g.sigma_x = ds * d.dx - 2 * q.k * q.c1 / x;
      g.sigma_y = ds * d.dy;
    } else {
      double r2 = x * x + y * y, psi = std::atan(d.xi) - J;
      double px = -y / r2 - g.theta_x, py = x / r2 - g.theta_y;
      double w = -2 * std::cos(2 * psi) / (q.c1 - std::sin(2 * psi));
      g.sigma_x = -q.k * q.c1 * (2 * x / r2 + w * px);
      g.sigma_y = -q.k * q.c1 * (2 * y / r2 + w * py);
    }
    g.u_x = r.u_xi * d.dx + r.ux;
    g.u_y = r.u_xi * d.dy + r.uy;
    g.v_x = r.v_xi * d.dx + r.vx;
    g.v_y = r.v_xi * d.dy + r.vy;
    return g;
  };
  return F;
}

pde::FieldMap make_c0(const SimilarityParams& p) {
  pde::FieldMap F;
  F.k = p.k;
  std::shared_ptr<quad::Antiderivative> Phi;
  if (p.sub == SimSub::C0MultA) {
    expr::FuncSlot Q = p.Q;
    if (p.printed)
      Phi = std::make_shared<quad::Antiderivative>(
          [Q](double xi) { return ((xi * xi + 1) * Q.d1(xi) + xi * Q(xi)) / xi; }, p.xi0, p.xi_min,
          p.xi_max);
    else
      Phi = std::make_shared<quad::Antiderivative>([Q](double xi) { return Q.d1(xi) / xi; }, p.xi0,
                                                   p.xi_min, p.xi_max);
  } else if (p.sub == SimSub::C0MultB) {
    expr::FuncSlot Fs = p.F;
    Phi = std::make_shared<quad::Antiderivative>([Fs](double xi) { return xi * Fs.d1(xi); }, p.xi0,
                                                 p.xi_min, p.xi_max);
  }
  if (Phi) {
    F.domain = [Phi](double x, double y) {
      if (x == 0) return false;
      double xi = y / x;
      return xi > Phi->lo() && xi < Phi->hi();
    };
  } else {
    F.domain = [](double x, double) { return x != 0; };
  }

  struct Vel {
    double u, v, ux, uy, vx, vy;
  };
  SimilarityParams q = p;
  auto vel = [q, Phi](double x, double y) {
    Xi d = xi_of(x, y);
    double xi = d.xi, eta = x * x + y * y;
    double c4 = q.c4, c5 = q.c5;
    Vel r{};
    switch (q.sub) {
      case SimSub::C0AddA: {
        double F1 = q.F.d1(xi), F2 = q.F.d2(xi);
        r.u = -c4 * y + F1;
        r.v = c4 * x + xi * F1 - q.F(xi);
        r.ux = F2 * d.dx;
        r.uy = -c4 + F2 * d.dy;
        r.vx = c4 + xi * F2 * d.dx;
        r.vy = xi * F2 * d.dy;
        break;
      }
      case SimSub::C0AddB: {
        double K0 = q.K(xi), K1 = q.K.d1(xi), K2 = q.K.d2(xi);
        double H0 = q.H(eta), H1 = q.H.d1(eta);
        r.u = K1 - y * H0 + c4;
        r.ux = K2 * d.dx - y * H1 * 2 * x;
        r.uy = K2 * d.dy - H0 - y * H1 * 2 * y;
        double vxi;
        if (q.printed) {
          r.v = -K1 + xi * K0 + x * H0 + c5;
          vxi = -K2 + K0 + xi * K1;
        } else {
          r.v = xi * K1 - K0 + x * H0 + c5;
          vxi = xi * K2;
        }
        r.vx = vxi * d.dx + H0 + x * H1 * 2 * x;
        r.vy = vxi * d.dy + x * H1 * 2 * y;
        break;
      }
      case SimSub::C0MultA: {
        double P0 = q.P(eta), P1 = q.P.d1(eta);
        double Q0 = q.Q(xi), Q1 = q.Q.d1(xi);
        double uxi;
        if (q.printed) {
          double Ps = (*Phi)(xi), dPs = ((xi * xi + 1) * Q1 + xi * Q0) / xi;
          r.u = y * P0 - xi * Q0 * Ps + c4;
          uxi = -(Q0 * Ps + xi * Q1 * Ps + xi * Q0 * dPs);
        } else {
          r.u = y * P0 + (*Phi)(xi) + c4;
          uxi = Q1 / xi;
        }
        r.ux = y * P1 * 2 * x + uxi * d.dx;
        r.uy = P0 + y * P1 * 2 * y + uxi * d.dy;
        r.v = Q0 - x * P0;
        r.vx = Q1 * d.dx - P0 - x * P1 * 2 * x;
        r.vy = Q1 * d.dy - x * P1 * 2 * y;
        break;
      }
      case SimSub::C0MultB: {
        double F1 = q.F.d1(xi);
        r.u = q.F(xi);
        r.v = (*Phi)(xi) + c4;
        r.ux = F1 * d.dx;
        r.uy = F1 * d.dy;
        r.vx = xi * F1 * d.dx;
        r.vy = xi * F1 * d.dy;
        break;
      }
      case SimSub::C0MultC: {
        double m = q.omega2 / 2, em = std::pow(eta, m), dm = m * std::pow(eta, m - 1);
        r.u = c4 * y * em;
        r.v = -c5 * x * em;
        r.ux = c4 * y * dm * 2 * x;
        r.uy = c4 * (em + y * dm * 2 * y);
        r.vx = -c5 * (em + x * dm * 2 * x);
        r.vy = -c5 * x * dm * 2 * y;
        break;
      }
      default:
        break;
    }
    return r;
  };

  F.eval = [q, vel](double x, double y) {
    Vel r = vel(x, y);
    pde::State s;
    s.theta = 0.5 * std::atan2(2 * x * y, x * x - y * y);
    s.sigma = -2 * q.k * std::atan(y / x) + q.c2;
    s.u = r.u;
    s.v = r.v;
    return s;
  };
  F.gradients = [q, vel](double x, double y) {
    Vel r = vel(x, y);
    double r2 = x * x + y * y;
    pde::Gradients g;
    g.theta_x = -y / r2;
    g.theta_y = x / r2;
    g.sigma_x = 2 * q.k * y / r2;
    g.sigma_y = -2 * q.k * x / r2;
    g.u_x = r.ux;
    g.u_y = r.uy;
    g.v_x = r.vx;
    g.v_y = r.vy;
    return g;
  };
  return F;
}

}  // namespace

pde::FieldMap make_similarity_solution(const SimilarityParams& p) {
  validate(p);
  return is_c0(p.sub) ? make_c0(p) : make_c1(p);
}

}  // namespace plastiflow::solutions
