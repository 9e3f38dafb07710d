#include "plastiflow/wave.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "plastiflow/errors.hpp"
#include "plastiflow/quad.hpp"

namespace plastiflow::solutions {

namespace {

struct Trig {
  double t, root, C, S;  // C = cos 2J, S = sin 2J
};

Trig wave_trig(double xi, const WaveParams& p) {
  double A = p.amp(), t = p.c1 * xi + p.c2, rad = A * A - t * t;
  if (rad < 0) throw DomainError("wave family: c1*xi + c2 outside [-(a1^2+a2^2), a1^2+a2^2]");
  double r = std::sqrt(rad), l = p.lambda(), m = p.mu();
  double N = m * t + l * r, D = l * t - m * r;
  return {t, r, D / (A * A), N / (A * A)};
}

// Fraction of the interval kept away from its endpoints, where J' is infinite.
constexpr double kEdge = 1e-6;

}  // namespace

double wave_J(double xi, const WaveParams& p) {
  Trig g = wave_trig(xi, p);
  return 0.5 * std::atan2(g.S, g.C);
}

double wave_J_prime(double xi, const WaveParams& p) {
  Trig g = wave_trig(xi, p);
  if (g.root == 0) throw DomainError("wave family: J' is infinite on the boundary");
  return -p.c1 / (2 * g.root);
}

std::pair<double, double> wave_xi_interval(const WaveParams& p) {
  double A = p.amp();
  double lo = (-A - p.c2) / p.c1, hi = (A - p.c2) / p.c1;
  if (lo > hi) std::swap(lo, hi);
  return {lo, hi};
}

double wave_sigma(double x, double y, const WaveParams& p) {
  double A = p.amp(), t = p.c1 * (p.a1 * x + p.a2 * y) + p.c2, rad = A * A - t * t;
  if (rad < 0) throw DomainError("wave family: point outside the domain of real pressure");
  return -p.c1 * p.k * (p.a2 * x - p.a1 * y) / A - p.k * std::sqrt(rad) / A + p.c3;
}

double wave_sigma_printed(double x, double y, const WaveParams& p) {
  double A = p.amp(), t = p.c1 * (p.a1 * x + p.a2 * y) + p.c2, rad = A - t * t;
  if (rad < 0) throw DomainError("wave family: point outside the printed pressure domain");
  return -p.c1 * p.k * (p.a2 * x - p.a1 * y) / A - std::sqrt(rad) / A + p.c3;
}

void validate(const WaveParams& p) {
  if (!(p.k > 0)) throw ParamError("k must be positive");
  if (p.a1 == 0 && p.a2 == 0) throw ParamError("a1 and a2 must not both vanish");
  if (p.c1 == 0) throw ParamError("wave family requires c1 != 0");
  switch (p.sub) {
    case WaveSub::AddA1_0:
      if (p.a1 != 0 || p.a2 != 1) throw ParamError("ADD_A1_0 requires a1 = 0, a2 = 1");
      break;
    case WaveSub::AddA2_0:
      if (p.a1 != 1 || p.a2 != 0) throw ParamError("ADD_A2_0 requires a1 = 1, a2 = 0");
      break;
    default:
      if (p.a1 == 0 || p.a2 == 0) throw ParamError("this subfamily requires a1 != 0 and a2 != 0");
  }
}

pde::FieldMap make_wave_solution(const WaveParams& p) {
  validate(p);
  pde::FieldMap F;
  F.k = p.k;
  auto [xlo, xhi] = wave_xi_interval(p);
  double margin = kEdge * (xhi - xlo);

  // Antiderivative of cot 2J for the subfamilies that need it.
  std::shared_ptr<quad::Antiderivative> cot_int;
  if (p.sub == WaveSub::AddA1_0 || p.sub == WaveSub::AddA2_0) {
    auto cot = [p](double xi) {
      Trig g = wave_trig(xi, p);
      return g.C / g.S;
    };
    double xi0 = std::clamp(0.0, xlo + margin, xhi - margin);
    cot_int = std::make_shared<quad::Antiderivative>(cot, xi0, xlo + margin, xhi - margin);
  }

  std::shared_ptr<quad::Antiderivative> Fq, Gq;
  if (p.sub == WaveSub::AddQuad) {
    double A = p.amp(), k1 = p.a1 + p.a2, k2 = p.a1 - p.a2, k3 = A;
    double a1 = p.a1, a2 = p.a2, c1 = p.c1, w1 = p.omega1, w2 = p.omega2, w3 = p.omega3,
           w4 = p.omega4;
    auto dz1 = [p](double xi) { return p.zeta1.empty() ? 0.0 : p.zeta1.d1(xi); };
    auto dz2 = [p](double xi) { return p.zeta2.empty() ? 0.0 : p.zeta2.d1(xi); };
    auto fint = [=](double xi) {
      Trig g = wave_trig(xi, p);
      double S = g.S, C = g.C;
      double den = 2 * a2 * k3 * ((a2 - 1) * S + 2 * a1 * C);
      double num =
          w1 * (-a1 * c1 * (k1 * S - 2 * a2 * C) * xi -
                k3 * (2 * a2 * k1 * S * S + (a1 + 3 * a2) * k2 * C * S - 2 * a1 * a2 * C * C)) +
          w2 * (-a1 * c1 * k1 * xi * S - 2 * k3 * C * (k1 * k1 * S - 2 * a2 * a2 * C)) -
          2 * w3 * a2 * k3 * (k1 * S - 2 * a2 * C) + 2 * w4 * a2 * k1 * k3 * S +
          2 * k3 * a2 * ((k2 * S - 2 * a1 * C) * dz1(xi) - k2 * S * dz2(xi));
      return num / den;
    };
    bool dbl = p.quad_double_angle;
    auto gint = [=](double xi) {
      Trig g = wave_trig(xi, p);
      double S = g.S, C = g.C;
      double C4 = dbl ? 2 * C * C - 1 : C;  // cos(2(2J)) or cos(2J)
      double den = 2 * a1 * a2 * k3 * ((a2 - 1) * S + 2 * a1 * C);
      double num =
          w1 * (a1 * c1 * xi * ((a1 + a2 * a2) * S + 2 * a2 * (a1 - 1) * C) +
                k3 * (2 * a2 * (a1 + a2 * a2 * a2) * S * S +
                      ((6 * a1 - 3) * a2 * a2 + a1 * a1) * S * C +
                      2 * a1 * a2 * (2 * a1 - 1) * C * C)) +
          w2 * (2 * c1 * a1 * (a2 * (a1 + 1) * S + 2 * a1 * a1 * C) * xi +
                2 * k3 * C *
                    (a2 * (a1 * a1 + 2 * a1 + a2 * a2) * S +
                     (2 * (a1 - 1) * a2 * a2 + 2 * a1 * a1 * a1) * C)) +
          2 * w3 * a2 * k3 * ((a1 + a2 * a2) * S + 2 * a2 * (a1 - 1) * C) -
          2 * w4 * a2 * k3 * (a2 * (a1 + 1) * S + 2 * a1 * a1 * C) -
          2 * k3 * a2 * (a1 - 1) * (a2 * S + 2 * a1 * C4) * dz1(xi) +
          ((a2 * a2 - a1) * S + 2 * a1 * a2 * C) * dz2(xi);
      return num / den;
    };
    double qlo = std::max(xlo + margin, p.quad_xi_min), qhi = std::min(xhi - margin, p.quad_xi_max);
    if (!(qlo < qhi)) throw ParamError("ADD_QUAD quadrature range is empty");
    double xi0 = std::clamp(0.0, qlo, qhi);
    Fq = std::make_shared<quad::Antiderivative>(fint, xi0, qlo, qhi);
    Gq = std::make_shared<quad::Antiderivative>(gint, xi0, qlo, qhi);
  }

  double lo = xlo, hi = xhi;
  if (cot_int) lo = cot_int->lo(), hi = cot_int->hi();
  if (Fq) lo = Fq->lo(), hi = Fq->hi();
  F.domain = [p, lo, hi](double x, double y) {
    double xi = p.a1 * x + p.a2 * y;
    if (!(xi > lo && xi < hi)) return false;
    if (p.printed_sigma) {
      double t = p.c1 * xi + p.c2;
      if (p.amp() - t * t <= 0) return false;
    }
    return true;
  };

  auto sigma = [p](double x, double y) {
    return p.printed_sigma ? wave_sigma_printed(x, y, p) : wave_sigma(x, y, p);
  };

  const double a1 = p.a1, a2 = p.a2, c1 = p.c1, c4 = p.c4, c5 = p.c5, c6 = p.c6, c7 = p.c7;
  // Velocity as  u = ux0*x + uy0*y + uC*C + uS*S + u0 (likewise v) for the closed-form subfamilies.
  struct Lin {
    double ux0 = 0, uy0 = 0, uC = 0, uS = 0, u0 = 0;
    double vx0 = 0, vy0 = 0, vC = 0, vS = 0, v0 = 0;
  } L;
  switch (p.sub) {
    case WaveSub::AddGen: {
      double f = p.printed ? 0.5 : 1.0;  // printed trig terms are half the needed size
      L.ux0 = c4;
      L.uC = f * a1 * (c4 + c5) / c1;
      L.uS = f * 2 * a2 * c4 / c1;
      L.u0 = c6;
      L.vC = -f * a1 * a1 * (c4 + c5) / (a2 * c1);
      L.vS = -f * 2 * a1 * c4 / c1;
      L.vx0 = -a1 * (c4 + c5) / a2;
      L.vy0 = -c4;
      L.v0 = c7;
      break;
    }
    case WaveSub::MultE:
      L.uC = -c4 * a2;
      L.uy0 = c1 * c4;
      L.u0 = c5;
      L.vC = c4 * a1;
      L.v0 = c6;
      break;
    case WaveSub::MultF:
      L.uC = -c4 * a2;
      L.uy0 = c4 * c5;
      L.u0 = c6;
      L.vC = c4 * a1;
      L.vx0 = c4 * (c1 - c5);
      L.v0 = c7;
      break;
    default:
      break;
  }

  switch (p.sub) {
    case WaveSub::AddGen:
    case WaveSub::MultE:
    case WaveSub::MultF:
      F.eval = [p, L, sigma](double x, double y) {
        double xi = p.a1 * x + p.a2 * y;
        Trig g = wave_trig(xi, p);
        pde::State s;
        s.theta = 0.5 * std::atan2(g.S, g.C);
        s.sigma = sigma(x, y);
        s.u = L.ux0 * x + L.uy0 * y + L.uC * g.C + L.uS * g.S + L.u0;
        s.v = L.vx0 * x + L.vy0 * y + L.vC * g.C + L.vS * g.S + L.v0;
        return s;
      };
      break;
    case WaveSub::AddA1_0:
      F.eval = [p, sigma, cot_int](double x, double y) {
        Trig g = wave_trig(y, p);
        pde::State s;
        s.theta = 0.5 * std::atan2(g.S, g.C);
        s.sigma = sigma(x, y);
        double I = (*cot_int)(y);
        if (p.printed) {
          s.u = p.c4 * x - p.c5 * y - 2 * p.c4 * I + p.c5;
          s.v = -p.c4 * y + p.c7;
        } else {
          s.u = p.c4 * x - p.c5 * y - 2 * p.c4 * I + p.c6;
          s.v = p.c5 * x - p.c4 * y + p.c7;
        }
        return s;
      };
      break;
    case WaveSub::AddA2_0:
      F.eval = [p, sigma, cot_int](double x, double y) {
        Trig g = wave_trig(x, p);
        pde::State s;
        s.theta = 0.5 * std::atan2(g.S, g.C);
        s.sigma = sigma(x, y);
        s.u = -p.c5 * x + p.c4 * y + p.c6;
        s.v = -p.c4 * x + p.c5 * y + 2 * p.c5 * (*cot_int)(x) + p.c7;
        return s;
      };
      break;
    case WaveSub::AddQuad:
      F.eval = [p, sigma, Fq, Gq](double x, double y) {
        double xi = p.a1 * x + p.a2 * y, eta = -p.a2 * x + p.a1 * y;
        Trig g = wave_trig(xi, p);
        double A = p.amp(), a1 = p.a1, a2 = p.a2, c1 = p.c1;
        double w1 = p.omega1, w2 = p.omega2, w3 = p.omega3, w4 = p.omega4;
        double z1 = p.zeta1.empty() ? 0.0 : p.zeta1(xi), z2 = p.zeta2.empty() ? 0.0 : p.zeta2(xi);
        double f = w1 * c1 * (2 * a1 * xi - a2 * eta) * eta / (4 * a2 * A) +
                   ((w2 + w1 * a1 / (2 * a2)) * g.C + w1 * g.S) * eta + w3 * eta + z1;
        double gg = -w2 * c1 * (2 * a1 * xi - a2 * eta) * eta / (2 * a2 * A) -
                    (w1 / 2 + w2 * a1 / 2) * g.C * eta + w4 * eta + z2;
        pde::State s;
        s.theta = 0.5 * std::atan2(g.S, g.C);
        s.sigma = sigma(x, y);
        s.u = f + (*Fq)(xi) + p.c4;
        s.v = gg + (*Gq)(xi) + p.c5;
        return s;
      };
      break;
  }

  if (p.sub == WaveSub::AddQuad) {
    F.notes.push_back("velocity quadratures implemented as printed; no analytic gradients");
  } else {
    F.gradients = [p, L, cot_int](double x, double y) {
      double xi = p.a1 * x + p.a2 * y;
      Trig g = wave_trig(xi, p);
      double Jp = -p.c1 / (2 * g.root);
      double A = p.amp();
      pde::Gradients d;
      d.theta_x = p.a1 * Jp;
      d.theta_y = p.a2 * Jp;
      if (p.printed_sigma) {
        double rad = A - g.t * g.t;
        double droot = -g.t * p.c1 / std::sqrt(rad);  // d sqrt(rad) / d xi
        d.sigma_x = -p.c1 * p.k * p.a2 / A - droot * p.a1 / A;
        d.sigma_y = p.c1 * p.k * p.a1 / A - droot * p.a2 / A;
      } else {
        double droot = -g.t * p.c1 / g.root;
        d.sigma_x = -p.c1 * p.k * p.a2 / A - p.k * droot * p.a1 / A;
        d.sigma_y = p.c1 * p.k * p.a1 / A - p.k * droot * p.a2 / A;
      }
      double dC = -2 * g.S * Jp, dS = 2 * g.C * Jp;  // d/dxi of cos 2J, sin 2J
      switch (p.sub) {
        case WaveSub::AddA1_0: {
          double cot = g.C / g.S;
          d.u_x = p.c4;
          d.u_y = -p.c5 - 2 * p.c4 * cot;
          d.v_x = p.printed ? 0.0 : p.c5;
          d.v_y = -p.c4;
          break;
        }
        case WaveSub::AddA2_0: {
          double cot = g.C / g.S;
          d.u_x = -p.c5;
          d.u_y = p.c4;
          d.v_x = -p.c4 + 2 * p.c5 * cot;
          d.v_y = p.c5;
          break;
        }
        default: {
          double du = L.uC * dC + L.uS * dS, dv = L.vC * dC + L.vS * dS;
          d.u_x = L.ux0 + p.a1 * du;
          d.u_y = L.uy0 + p.a2 * du;
          d.v_x = L.vx0 + p.a1 * dv;
          d.v_y = L.vy0 + p.a2 * dv;
        }
      }
      return d;
    };
  }
  return F;
}

}  // namespace plastiflow::solutions
