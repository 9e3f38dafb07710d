// Acceptance suite: one PASS/FAIL line per criterion.

#include <boost/math/special_functions/jacobi_elliptic.hpp>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "oracles.hpp"
#include "plastiflow/die.hpp"
#include "plastiflow/expr.hpp"
#include "plastiflow/flow.hpp"
#include "plastiflow/pde.hpp"
#include "plastiflow/similarity.hpp"
#include "plastiflow/solutions.hpp"
#include "plastiflow/symmetry.hpp"
#include "plastiflow/tau.hpp"
#include "plastiflow/wave.hpp"
#include "scenario.hpp"

namespace pf = plastiflow;
namespace sol = plastiflow::solutions;
namespace sym = plastiflow::symmetry;
using oracle::kPi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

std::string g(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

sol::ParamSet params(std::initializer_list<std::pair<const std::string, double>> v,
                     std::map<std::string, std::string> f = {}) {
  sol::ParamSet p;
  p.values = v;
  p.functions = std::move(f);
  return p;
}

sol::ParamSet scenario_params(const std::string& name) {
  return pf::cli::load_scenario(oracle::source_path("scenarios/" + name)).params;
}

// ---- 1 ----
void commutation(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& table = sym::commutation_table();
  int matched = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      oracle::Vec8 want{};
      auto [k, s] = oracle::kTable[i][j];
      if (k >= 0) want[k] = s;
      bool same = true;
      for (int a = 0; a < 8; ++a) same = same && table[i][j].coeffs[a] == want[a];
      matched += same;
    }
  o.check(matched == 64, "structure table differs from the transcription");

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-3, 3);
  double worst = 0, field_mismatch = 0;
  for (int n = 0; n < 10; ++n) {
    std::array<double, 6> p;
    for (double& c : p) c = U(rng);
    for (int i = 0; i < 8; ++i) {
      auto lib = sym::field_of(sym::AlgebraElement::basis(i))(sym::Point6::from_array(p));
      auto ref = oracle::field_at(oracle::generator(i), p);
      for (int a = 0; a < 6; ++a) field_mismatch = std::max(field_mismatch, std::abs(lib[a] - ref[a]));
      for (int j = 0; j < 8; ++j) {
        auto lhs = oracle::lie_bracket(oracle::generator(i), oracle::generator(j), p);
        oracle::Vec8 c{};
        for (int a = 0; a < 8; ++a) c[a] = table[i][j].coeffs[a];
        auto rhs = oracle::field_at(oracle::combine(c), p);
        for (int a = 0; a < 6; ++a) worst = std::max(worst, std::abs(lhs[a] - rhs[a]));
      }
    }
  }
  auto rep = sym::verify_commutation_table(10, 1);
  o.check(field_mismatch == 0, "generator fields differ");
  o.check(worst == 0, "numeric bracket defect " + g(worst));
  o.check(rep.pairs == 64 && rep.max_defect == 0, "library report");
  double dt = seconds_since(t0);
  o.check(dt < 1, "runtime");
  o.detail << "pairs matched " << matched << "/64, numeric defect " << g(worst) << " at 10 points, library report "
           << rep.pairs << " pairs defect " << g(rep.max_defect) << ", " << g(dt) << " s";
}

// ---- 2 ----
void jacobi_automorphisms(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  double jac = 0;
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b)
      for (int c = 0; c < 8; ++c) {
        auto ea = oracle::unit(a), eb = oracle::unit(b), ec = oracle::unit(c);
        auto t1 = oracle::table_bracket(ea, oracle::table_bracket(eb, ec));
        auto t2 = oracle::table_bracket(eb, oracle::table_bracket(ec, ea));
        auto t3 = oracle::table_bracket(ec, oracle::table_bracket(ea, eb));
        for (int i = 0; i < 8; ++i) jac = std::max(jac, std::abs(t1[i] + t2[i] + t3[i]));
      }
  double aut = 0;
  for (const auto* R : {&oracle::kR1, &oracle::kR2})
    for (int a = 0; a < 8; ++a)
      for (int b = 0; b < 8; ++b) {
        auto br = oracle::table_bracket(oracle::unit(a), oracle::unit(b));
        oracle::Vec8 ra = oracle::unit(a), rb = oracle::unit(b);
        ra[a] *= (*R)[a];
        rb[b] *= (*R)[b];
        auto rhs = oracle::table_bracket(ra, rb);
        for (int i = 0; i < 8; ++i) aut = std::max(aut, std::abs((*R)[i] * br[i] - rhs[i]));
      }
  double lib_jac = sym::jacobi_defect();
  double lib_r1 = sym::automorphism_defect(sym::Automorphism::R1);
  double lib_r2 = sym::automorphism_defect(sym::Automorphism::R2);
  o.check(jac == 0 && lib_jac == 0, "Jacobi identity");
  o.check(aut == 0 && lib_r1 == 0 && lib_r2 == 0, "automorphism");
  double dt = seconds_since(t0);
  o.check(dt < 1, "runtime");
  o.detail << "Jacobi defect " << g(jac) << " (library " << g(lib_jac) << ") over 512 triples, R1/R2 defect "
           << g(aut) << " (library " << g(lib_r1) << ", " << g(lib_r2) << "), " << g(dt) << " s";
}

// ---- 3 ----
void annihilation(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  int rows = 0, evals = 0;
  double worst = 0;
  for (const auto& row : sym::one_dim_subalgebras()) {
    if (!row.well_formed) continue;
    ++rows;
    for (std::uint64_t ps = 1; ps <= 2; ++ps) {
      auto prm = row.sample_params(ps);
      auto gen = row.generator(prm);
      oracle::Vec8 c{};
      for (int a = 0; a < 8; ++a) c[a] = gen.coeffs[a];
      auto X = oracle::combine(c);
      for (const auto& [name, inv] : row.invariants(prm)) {
        for (int n = 0; n < 20; ++n) {
          auto p = row.sample_point(1000 * ps + n).as_array();
          auto xi = oracle::field_at(X, p);
          double d = 0;
          for (int a = 0; a < 6; ++a) {
            if (xi[a] == 0) continue;
            double h = 1e-6 * std::max(1.0, std::abs(p[a]));
            auto pp = p, pm = p;
            pp[a] += h;
            pm[a] -= h;
            d += xi[a] * (inv(sym::Point6::from_array(pp)) - inv(sym::Point6::from_array(pm))) / (2 * h);
          }
          worst = std::max(worst, std::isfinite(d) ? std::abs(d) : INFINITY);
          ++evals;
        }
      }
    }
  }
  double lib = 0;
  for (const auto& r : sym::verify_annihilation(2, 20, 1))
    if (r.well_formed) lib = std::max(lib, r.max_defect);
  o.check(rows >= 10, "fewer than 10 well-formed rows");
  o.check(worst < 1e-6, "defect " + g(worst));
  o.check(lib < 1e-6, "library defect " + g(lib));
  double dt = seconds_since(t0);
  o.check(dt < 5, "runtime");
  o.detail << rows << " well-formed rows, " << evals << " evaluations, max defect " << g(worst) << " (library "
           << g(lib) << "), " << g(dt) << " s";
}

// ---- 4 ----
void wave(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  struct Set {
    double a1, a2, c1, c2;
  };
  double ode = 0, first = 0, lib_first = 0, branch = 0;
  for (Set s : {Set{1, 1, 0.5, 0}, Set{1, 0, 0.5, 0}, Set{-10, 10, 2, 0}}) {
    sol::WaveParams p;
    p.a1 = s.a1, p.a2 = s.a2, p.c1 = s.c1, p.c2 = s.c2;
    double lam = s.a2 * s.a2 - s.a1 * s.a1, mu = -2 * s.a1 * s.a2;
    double A = s.a1 * s.a1 + s.a2 * s.a2;
    double lo = (-A - s.c2) / s.c1, hi = (A - s.c2) / s.c1, w = hi - lo;
    auto J = [&](double xi) { return oracle::wave_J_closed(xi, s.a1, s.a2, s.c1, s.c2); };
    for (int i = 0; i < 100; ++i) {
      double xi = lo + w * (0.05 + 0.9 * (i + 0.5) / 100);
      double J0 = J(xi);
      auto near = [&](double v) { return J0 + std::remainder(v - J0, kPi); };
      double h2 = 1e-4 * w, h1 = 1e-5 * w;
      double Jpp = (near(J(xi + h2)) - 2 * J0 + near(J(xi - h2))) / (h2 * h2);
      double Jp = (near(J(xi + h1)) - near(J(xi - h1))) / (2 * h1);
      double S = std::sin(2 * J0), C = std::cos(2 * J0);
      ode = std::max(ode, std::abs((-lam * S + mu * C) * Jpp + (-2 * mu * S - 2 * lam * C) * Jp * Jp));
      first = std::max(first, std::abs(2 * Jp * (lam * S - mu * C) + s.c1));
      double lJ = sol::wave_J(xi, p), lJp = sol::wave_J_prime(xi, p);
      lib_first = std::max(lib_first, std::abs(2 * lJp * (lam * std::sin(2 * lJ) - mu * std::cos(2 * lJ)) + s.c1));
      branch = std::max(branch, oracle::mod_pi_distance(lJ, J0));
    }
  }
  o.check(ode < 1e-5, "ODE residual " + g(ode));
  o.check(first < 1e-6 && lib_first < 1e-6, "first integral");
  o.check(branch < 1e-12, "library angle differs from the closed form");

  struct Case {
    const char* id;
    sol::ParamSet p;
    sol::Rect r;
  };
  std::vector<Case> cases = {
      {"wave/add_gen", scenario_params("wave_add_gen.json"), {-1.5, 1.5, -1.5, 1.5}},
      {"wave/add_a2_0", scenario_params("die_add_a2_0.json"), {-1.9, 1.9, -2, 2}},
      {"wave/mult_e", {}, {-3, 3, -3, 3}},
      {"wave/mult_f", scenario_params("die_mult_f.json"), {-3, 3, -3, 3}},
  };
  double an = 0, fd = 0, compat = 0;
  for (const auto& c : cases) {
    sol::VerifyOptions v;
    v.region = c.r;
    v.n = 100;
    v.tol_analytic = 1e-6;
    auto rep = sol::verify_family(c.id, c.p, v);
    o.check(rep.pass && rep.analytic && rep.samples == 100, std::string(c.id) + " " + rep.status());
    an = std::max(an, rep.max_analytic.max_abs());
    fd = std::max(fd, rep.max_fd.max_abs());
    compat = std::max(compat, rep.max_compat);
  }
  o.check(compat < 1e-4, "compatibility");
  double dt = seconds_since(t0);
  o.check(dt < 10, "runtime");
  o.detail << "angle ODE " << g(ode) << ", first integral " << g(first) << " (library " << g(lib_first)
           << "), analytic residual " << g(an) << ", FD " << g(fd) << ", compatibility " << g(compat)
           << " over 4 subfamilies x 100 points, " << g(dt) << " s";
}

// ---- 5 ----
void similarity(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  const double c1 = 1.5, c2 = 0, s = std::sqrt(c1 * c1 - 1);
  sol::SimBranch br(c1, c2, 0.5, 0, 0.05, 20);
  double back = 0, first = 0;
  int n = 0;
  double w = br.hi() - br.lo();
  for (int i = 0; i < 200; ++i) {
    double xi = br.lo() + w * (0.02 + 0.96 * (i + 0.5) / 200);
    double J = br.J(xi), psi = std::atan(xi) - J, a = s * (c2 - J) / c1;
    back = std::max(back, std::abs(s * std::sin(a) * std::cos(psi) - std::cos(a) * (c1 * std::sin(psi) - std::cos(psi))));
    double h = 1e-6;
    double Jp = (br.J(xi + h) - br.J(xi - h)) / (2 * h);
    first = std::max(first, std::abs(((xi * xi - 1) * std::sin(2 * J) + 2 * xi * std::cos(2 * J)) * Jp - c1));
    ++n;
  }
  o.check(back < 1e-10, "back-substitution " + g(back));
  o.check(first < 1e-5, "first integral " + g(first));

  double fd = 0;
  for (const char* id : {"sim/add_a", "sim/add_b", "sim/mult_a", "sim/mult_c"}) {
    sol::VerifyOptions v;
    v.region = {0.2, 2, 0.05, 2};
    v.min_abs_x = 0.2;
    auto rep = sol::verify_family(id, {}, v);
    o.check(rep.pass && rep.samples == 100, std::string(id) + " " + rep.status());
    fd = std::max(fd, rep.max_fd.max_abs());
  }
  // Printed variants must be reported as unverified.
  int flagged = 0;
  for (auto [id, p] : {std::pair{"sim/add_b", params({{"printed", 1}})},
                       std::pair{"sim/mult_c", params({{"printed", 1}, {"omega1", 2}})},
                       std::pair{"sim/add_a", params({{"printed_sigma", 1}})}}) {
    sol::VerifyOptions v;
    v.region = {0.2, 2, 0.05, 2};
    v.min_abs_x = 0.2;
    auto rep = sol::verify_family(id, p, v);
    flagged += rep.status() == "UNVERIFIED";
  }
  o.check(flagged == 3, "printed variants not flagged");
  const auto& notes = sol::family_info("sim/add_a").deviations;
  o.check(std::find(notes.begin(), notes.end(), "dangling trailing term of v dropped") != notes.end(),
          "dropped term not reported");
  double dt = seconds_since(t0);
  o.detail << "branch [" << g(br.lo()) << ", " << g(br.hi()) << "], back-substitution " << g(back) << " at " << n
           << " points, first integral " << g(first) << ", FD residual " << g(fd)
           << " for 4 subfamilies, printed variants flagged UNVERIFIED " << flagged << "/3, " << g(dt) << " s";
}

// ---- 6 ----
void similarity_c0(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  auto F = sol::build_family("sim/c0_add_a", {});
  double k = F.k;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> X(0.2, 2), Y(-2, 2);
  double ref = 0, lib = 0, shape = 0;
  for (int i = 0; i < 100; ++i) {
    double x = X(rng), y = Y(rng), r2 = x * x + y * y;
    auto st = F(x, y);
    shape = std::max({shape, oracle::mod_pi_distance(st.theta, std::atan2(y, x)),
                      std::abs(st.sigma - (-2 * k * std::atan(y / x)))});
    double tx = -y / r2, ty = x / r2, sx = 2 * k * y / r2, sy = -2 * k * x / r2;
    double S = std::sin(2 * st.theta), C = std::cos(2 * st.theta);
    ref = std::max({ref, std::abs(sx - 2 * k * (tx * C + ty * S)), std::abs(sy - 2 * k * (tx * S - ty * C))});
    auto r = pf::pde::residual(F, x, y);
    lib = std::max({lib, std::abs(r.r_a), std::abs(r.r_b)});
  }
  o.check(shape < 1e-12, "angle/pressure differ from the closed form");
  o.check(ref < 1e-8 && lib < 1e-8, "pressure residual");

  sol::VerifyOptions v;
  v.region = {0.2, 2, -2, 2};
  v.min_abs_x = 0.2;
  auto dn = sol::verify_family("sim/c0_add_a", params({}, {{"F", "dn(2*pi*(1 - exp(-2*t^2)), 0.5)"}}), v);
  o.check(dn.pass && dn.max_fd.max_abs() < 1e-4, "elliptic case " + dn.status());
  v.tol_analytic = 1e-6;
  auto poly = sol::verify_family("sim/c0_add_b", scenario_params("sim_c0_add_b_polynomial.json"), v);
  o.check(poly.pass && poly.analytic && poly.max_analytic.max_abs() < 1e-6, "polynomial case " + poly.status());

  auto Fc = sol::build_family("sim/c0_mult_c", params({{"c4", 1.3}, {"c5", 1.3}, {"omega2", 1.5}}));
  auto Fa = sol::build_family("sim/c0_mult_a", params({{"c4", 0}}, {{"P", "1.3*t^0.75"}, {"Q", "0"}}));
  double same = 0;
  for (int i = 0; i < 100; ++i) {
    double x = X(rng), y = std::uniform_real_distribution<double>(0.2, 2)(rng);
    auto a = Fa(x, y), c = Fc(x, y);
    same = std::max({same, std::abs(a.theta - c.theta), std::abs(a.sigma - c.sigma), std::abs(a.u - c.u),
                     std::abs(a.v - c.v)});
  }
  o.check(same < 1e-10, "subcase identity " + g(same));
  double dt = seconds_since(t0);
  o.detail << "pressure residual " << g(ref) << " (library " << g(lib) << "), elliptic FD " << g(dn.max_fd.max_abs())
           << ", polynomial analytic " << g(poly.max_analytic.max_abs()) << ", subcase identity " << g(same) << ", "
           << g(dt) << " s";
}

// ---- 7 ----
void tau(Outcome& o) {
  auto t0 = std::chrono::steady_clock::now();
  sol::TauParams p;  // a1 = 2, a2 = 1, c1 = 1, k = 0.5, c2 = c3 = 0
  double a1 = p.a1, a2 = p.a2, c1 = p.c1, k = p.k, c3 = p.c3;
  double d = a1 * a1 - a2 * a2;
  double lam = c1 / 2 * (a2 * a2 - a1 * a1), mu = k * (a1 * a1 + a2 * a2) / (a2 * a2 - a1 * a1) - c1 * a1 * a2;
  double k1 = c1 * a2 + 2 * k * a1 / d;
  double k2 = (c1 * c1 * d * d - 4 * k * k) / (2 * c1 * a1 * d + 4 * k * a2);
  double k3 = (c1 * a2 * d + 2 * k * a1) / (c1 * a1 * d + 2 * k * a2);
  double K = k1 * k1 + k2 * k2, L = lam * lam + mu * mu;
  auto F = sol::build_family("tau/add", {});
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.8, 0.8);
  double rel = 0, rel_theta = 0, explicit_gap = 0, mixed = 0;
  int used = 0;
  for (int i = 0; i < 400 && used < 100; ++i) {
    double x = U(rng), y = U(rng), w = x + k3 * y + c3;
    if (K - w * w < 0 || !F.contains(x, y)) continue;
    ++used;
    double root = std::sqrt((K - w * w) * (lam * k1 - mu * k2) * (lam * k1 - mu * k2));
    double tau = -(mu * k1 + lam * k2) / K * w + (p.branch > 0 ? root : -root) / K;
    double lib_tau = sol::tau_solve(x, y, p);
    explicit_gap = std::max(explicit_gap, std::abs(lib_tau - tau));
    double R = std::sqrt(std::max(0.0, L - tau * tau)), best = INFINITY;
    for (double rs : {1.0, -1.0})
      for (double e : {1.0, -1.0}) {
        double N = mu * tau - lam * rs * R, D = lam * tau + mu * rs * R;
        best = std::min(best, std::abs(e * (k1 * N + k2 * D) / L + w));
      }
    rel = std::max(rel, best);
    double th = F(x, y).theta;
    rel_theta = std::max(rel_theta, std::abs(k1 * std::sin(2 * th) + k2 * std::cos(2 * th) + w));
    auto tf = [&](double a, double b) { return sol::tau_solve(a, b, p); };
    mixed = std::max(mixed, pf::pde::mixed_defect(tf, x, y));
  }
  o.check(used >= 50, "too few points with a real root");
  o.check(explicit_gap < 1e-12, "explicit root differs " + g(explicit_gap));
  o.check(rel < 1e-8 && rel_theta < 1e-8, "level-line relation");
  o.check(mixed < 1e-4, "mixed derivative " + g(mixed));
  sol::VerifyOptions v;
  v.region = {-0.8, 0.8, -0.8, 0.8};
  auto rep = sol::verify_family("tau/add", {}, v);
  o.check(rep.pass && rep.samples == 100 && rep.max_fd.max_abs() < 1e-4, "velocities " + rep.status());
  auto printed = sol::verify_family("tau/add", params({{"printed", 1}}), v);
  o.check(printed.status() == "UNVERIFIED", "printed constants not flagged");
  double dt = seconds_since(t0);
  o.check(dt < 5, "runtime");
  o.detail << used << " points, relation " << g(rel) << " (with field angle " << g(rel_theta)
           << "), explicit root gap " << g(explicit_gap) << ", mixed derivative " << g(mixed) << ", FD residual "
           << g(rep.max_fd.max_abs()) << ", printed constants " << printed.status() << ", " << g(dt) << " s";
}

// ---- 8 ----
void flow(Outcome& o) {
  auto R = sol::make_rotation_solution(1, 0, 0, 1);
  int rev = static_cast<int>(std::lround(2 * kPi / 1e-3));
  auto c = pf::flow::flowline(R, 1, 0, 1e-3, rev);
  double drift = 0;
  for (const auto& n : c.nodes) drift = std::max(drift, std::abs(std::hypot(n.x, n.y) - 1));
  o.check(c.nodes.size() == static_cast<std::size_t>(rev + 1), "revolution cut short");
  o.check(drift < 1e-8, "radius drift " + g(drift));

  std::vector<double> err;
  for (double dt : {0.1, 0.05, 0.025}) {
    int n = static_cast<int>(std::lround(2.0 / dt));
    auto e = pf::flow::flowline(R, 1, 0, dt, n).nodes.back();
    err.push_back(std::hypot(e.x - std::cos(2.0), e.y - std::sin(2.0)));
  }
  double r1 = err[0] / err[1], r2 = err[1] / err[2];
  o.check(r1 >= 8 && r2 >= 8, "convergence ratio");

  double tan_flow = oracle::flow_tangency(R, c), tan_feed = 0;
  int curves = 1;
  for (const char* name : {"wave_add_gen.json", "die_add_a2_0.json", "die_mult_f.json", "sim_c0_add_a_dn.json", "sim_c0_add_b.json", "constant.json"}) {
    auto s = pf::cli::load_scenario(oracle::source_path("scenarios/" + std::string(name)));
    auto F = sol::build_family(s.family, s.params);
    if (s.flowline) {
      auto reg = s.flowline->region.value_or(sol::family_info(s.family).region);
      for (auto p : s.flowline->seeds) {
        auto j = pf::flow::join(pf::flow::flowline(F, p.x, p.y, s.flowline->dt, s.flowline->steps,
                                                   pf::flow::Direction::Backward, &reg),
                                pf::flow::flowline(F, p.x, p.y, s.flowline->dt, s.flowline->steps,
                                                   pf::flow::Direction::Forward, &reg));
        tan_flow = std::max({tan_flow, oracle::flow_tangency(F, j), pf::flow::flow_tangency(j)});
        ++curves;
      }
    }
    if (s.boundary) {
      auto reg = s.boundary->region.value_or(sol::family_info(s.family).region);
      auto fd = s.boundary->feed;
      for (auto p : s.boundary->seeds) {
        auto j = pf::flow::join(pf::flow::plasticity_boundary(F, fd, p.x, p.y, s.boundary->dt, s.boundary->steps,
                                                              pf::flow::Direction::Backward, &reg),
                                pf::flow::plasticity_boundary(F, fd, p.x, p.y, s.boundary->dt, s.boundary->steps,
                                                              pf::flow::Direction::Forward, &reg));
        tan_feed = std::max({tan_feed, oracle::feed_tangency(F, j, fd.U0, fd.V0),
                             pf::flow::boundary_tangency(j, fd)});
        ++curves;
      }
    }
  }
  o.check(tan_flow < 1e-4, "flow tangency " + g(tan_flow));
  o.check(tan_feed < 1e-4, "feed tangency " + g(tan_feed));
  o.detail << "radius drift " << g(drift) << " over one revolution, error ratios " << g(r1) << ", " << g(r2)
           << ", flow tangency " << g(tan_flow) << ", feed tangency " << g(tan_feed) << " over " << curves
           << " curves";
}

// ---- 9 ----
void die_pipeline(Outcome& o) {
  namespace fs = std::filesystem;
  fs::path root = fs::path(PLASTIFLOW_BINARY_DIR) / "acceptance_out";
  fs::remove_all(root);
  std::ostringstream summary;
  for (const char* name : {"die_add_a2_0", "die_mult_f"}) {
    auto path = oracle::source_path("scenarios/" + std::string(name) + ".json");
    auto s = pf::cli::load_scenario(path);
    auto F = sol::build_family(s.family, s.params);
    auto geo = pf::die::build_die(F, *s.die);

    double tw = 0, tl = 0;
    for (const auto& c : geo.walls) tw = std::max(tw, oracle::flow_tangency(F, c));
    for (std::size_t i = 0; i < geo.limits.size(); ++i)
      tl = std::max(tl, oracle::feed_tangency(F, geo.limits[i], geo.limit_feeds[i].U0, geo.limit_feeds[i].V0));
    o.check(!geo.walls.empty() && !geo.limits.empty(), std::string(name) + " has no curves");
    o.check(tw < 1e-4 && tl < 1e-4, std::string(name) + " tangency");

    // Real-domain predicate of the wave family, written out directly.
    double a1 = s.params.values.at("a1"), a2 = s.params.values.at("a2");
    double c1 = s.params.values.at("c1"), c2 = s.params.values.at("c2"), A = a1 * a1 + a2 * a2;
    const auto& r = geo.pressure;
    int mismatch = 0, inside = 0;
    double sigma_gap = 0;
    for (int j = 0; j < r.ny; ++j)
      for (int i = 0; i < r.nx; ++i) {
        double x = r.cx(i), y = r.cy(j), t = c1 * (a1 * x + a2 * y) + c2;
        bool want = A * A - t * t > 0;
        bool got = r.in_domain[j * r.nx + i];
        mismatch += want != got;
        inside += got;
        if (got) sigma_gap = std::max(sigma_gap, std::abs(r.sigma[j * r.nx + i] - F(x, y).sigma));
      }
    o.check(mismatch == 0, std::string(name) + " raster mask");
    o.check(sigma_gap < 1e-12, std::string(name) + " raster values");

    std::string out[2][4];
    const char* files[4] = {"die.svg", "walls.csv", "limits.csv", "raster.csv"};
    for (int run = 0; run < 2; ++run) {
      fs::path dir = root / (std::string(name) + "_" + std::to_string(run));
      std::ostringstream so, se;
      int code = pf::cli::run({"die", "--scenario", path, "--out", dir.string()}, so, se);
      o.check(code == 0, std::string(name) + " die exit " + std::to_string(code));
      for (int f = 0; f < 4; ++f) out[run][f] = oracle::read_file((dir / files[f]).string());
    }
    bool identical = true;
    for (int f = 0; f < 4; ++f) identical = identical && !out[0][f].empty() && out[0][f] == out[1][f];
    o.check(identical, std::string(name) + " outputs differ between runs");

    auto cells = oracle::svg_cells(out[0][0]);
    bool mono = oracle::strictly_monotone(cells);
    o.check(mono && static_cast<int>(cells.size()) == inside, std::string(name) + " shading");

    std::string extra;
    if (std::string(name) == "die_mult_f") {
      const pf::flow::Curve *a = nullptr, *b = nullptr;
      for (const auto& c : geo.limits) {
        if (c.label == "C1") a = &c;
        if (c.label == "C2") b = &c;
      }
      double gap = 0;
      if (a && b)
        for (std::size_t i = 0; i < std::min(a->nodes.size(), b->nodes.size()); ++i)
          gap = std::max(gap, std::hypot(a->nodes[i].x - b->nodes[i].x, a->nodes[i].y - b->nodes[i].y));
      o.check(gap > 0, "C1 and C2 coincide");
      extra = ", C1/C2 max gap " + g(gap);
    }
    summary << name << ": " << geo.walls.size() << " walls, " << geo.limits.size() << " limits, tangency " << g(tw)
            << "/" << g(tl) << ", " << inside << " cells, mask mismatches " << mismatch << ", shading "
            << (mono ? "monotone" : "not monotone") << ", repeat " << (identical ? "identical" : "differs") << extra
            << "; ";
  }
  o.detail << summary.str();
}

// ---- 10 ----
void expressions(Outcome& o) {
  namespace ex = pf::expr;
  const std::vector<std::string> corpus = {
      "t", "3*t^2 - 2*t + 1", "t^5", "sin(t)", "cos(2*t)", "tan(t/3)", "exp(-t^2)", "ln(t)", "sqrt(t)",
      "atan(t)", "1/(1 + t^2)", "t*exp(t)", "sin(t)*cos(t)", "exp(sin(t))", "ln(1 + t^2)", "sqrt(1 + t^2)",
      "t^t", "(t - 1)^3", "-t + 2", "pi*t", "2^t", "atan(1/t)", "2*exp(-0.1*t)", "t^3 - 2*t",
      "1 + 0.5*t - 0.1*t^2", "sin(t)^2 + cos(t)^2", "t/(t + 1)", "dn(t, 0.9)", "cos(t)*dn(t, 0.25)",
      "dn(2*pi*(1 - exp(-2*t^2)), 0.5)"};
  const std::vector<double> ts = {0.3, 0.7, 1.1, 1.6, 2.3};
  // Derivative of dn(u, m) in u is -m^2 sn cn.
  auto ddn = [](double u, double m) {
    double sn = boost::math::jacobi_sn(m, u), cn = boost::math::jacobi_cn(m, u);
    return -m * m * sn * cn;
  };
  auto dn = [](double u, double m) { return boost::math::jacobi_dn(m, u); };
  std::map<std::string, std::function<double(double)>> exact = {
      {"dn(t, 0.9)", [&](double t) { return ddn(t, 0.9); }},
      {"cos(t)*dn(t, 0.25)", [&](double t) { return -std::sin(t) * dn(t, 0.25) + std::cos(t) * ddn(t, 0.25); }},
      {"dn(2*pi*(1 - exp(-2*t^2)), 0.5)",
       [&](double t) {
         double e = std::exp(-2 * t * t);
         return ddn(2 * kPi * (1 - e), 0.5) * 2 * kPi * 4 * t * e;
       }},
  };
  double dmax = 0;
  int roundtrip = 0;
  for (const auto& text : corpus) {
    ex::FuncSlot f(text);
    auto e = ex::parse(text);
    std::string s1 = ex::to_string(e);
    auto e1 = ex::parse(s1);
    bool rt = ex::to_string(e1) == s1;
    for (double t : ts) {
      double d;
      if (exact.count(text)) {
        d = exact[text](t);
      } else {
        double h = 1e-5 * std::max(1.0, std::abs(t));
        d = (ex::eval(e, t + h) - ex::eval(e, t - h)) / (2 * h);
      }
      dmax = std::max(dmax, std::abs(f.d1(t) - d));
      rt = rt && ex::eval(e1, t) == ex::eval(e, t);
    }
    roundtrip += rt;
  }
  o.check(corpus.size() == 30, "corpus size");
  o.check(dmax < 1e-6, "derivative gap " + g(dmax));
  o.check(roundtrip == 30, "round-trip");

  double bound = 0, oracle_gap = 0;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-20, 20);
  for (double m : {0.0, 0.25, 0.5, 0.9}) {
    double lo = std::sqrt(1 - m * m);
    for (int i = 0; i < 1000; ++i) {
      double u = U(rng), v = ex::jacobi_dn(u, m);
      bound = std::max({bound, lo - v, v - 1});
      oracle_gap = std::max(oracle_gap, std::abs(v - dn(u, m)));
    }
  }
  o.check(bound <= 0, "dn outside its bounds");
  o.check(oracle_gap < 1e-10, "dn differs from boost " + g(oracle_gap));
  o.detail << "30 expressions, derivative gap " << g(dmax) << ", round-trip " << roundtrip
           << "/30, dn bound excess " << g(std::max(bound, 0.0)) << ", dn vs boost " << g(oracle_gap)
           << " at 4000 points";
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"commutation table", commutation},
      {"Jacobi identity and reflections", jacobi_automorphisms},
      {"invariant annihilation", annihilation},
      {"wave family", wave},
      {"similarity family, c1 != 0", similarity},
      {"similarity family, c1 = 0", similarity_c0},
      {"tau family", tau},
      {"flow integration", flow},
      {"die pipeline", die_pipeline},
      {"expression engine", expressions},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.pass;
    std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << ": "
              << o.detail.str() << std::endl;
  }
  std::cout << (failed ? "acceptance: FAIL" : "acceptance: PASS") << " (" << (criteria.size() - failed) << "/"
            << criteria.size() << ")" << std::endl;
  return failed ? 1 : 0;
}
