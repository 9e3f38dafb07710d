#include "plastiflow/solutions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plastiflow/errors.hpp"

namespace plastiflow::solutions {

namespace {

const char* kSigmaNote =
    "pressure uses the corrected form -c1 k (a2 x - a1 y)/A - k sqrt(A^2 - t^2)/A + c3, A = a1^2 + a2^2 "
    "(printed_sigma=1 selects the printed form)";

class Args {
 public:
  Args(const FamilyInfo& info, const ParamSet& ps) {
    for (const auto& [name, def] : info.params) values_[name] = def;
    for (const auto& [name, def] : info.functions) functions_[name] = def;
    for (const auto& [name, val] : ps.values) {
      if (!values_.count(name)) throw ParamError("unknown parameter '" + name + "' for family " + info.id);
      values_[name] = val;
    }
    for (const auto& [name, text] : ps.functions) {
      if (!functions_.count(name)) throw ParamError("unknown function '" + name + "' for family " + info.id);
      functions_[name] = text;
    }
  }
  double operator[](const std::string& name) const { return values_.at(name); }
  bool flag(const std::string& name) const { return values_.at(name) != 0; }
  expr::FuncSlot fn(const std::string& name) const {
    const std::string& t = functions_.at(name);
    return t.empty() ? expr::FuncSlot() : expr::FuncSlot(t);
  }

 private:
  std::map<std::string, double> values_;
  std::map<std::string, std::string> functions_;
};

using P = std::vector<std::pair<std::string, double>>;

P wave_common(double a1, double a2, double c1, double c2, double c3, double k) {
  return {{"a1", a1}, {"a2", a2}, {"c1", c1}, {"c2", c2}, {"c3", c3}, {"k", k}, {"printed_sigma", 0}};
}

P join(P a, const P& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<FamilyInfo> make_registry() {
  std::vector<FamilyInfo> r;
  // Wave family.
  r.push_back({"wave/add_gen", "theta = J(a1 x + a2 y), additive velocities (general a1, a2)",
               join(wave_common(1, 1, 0.5, 0, 0, 0.0027),
                    {{"c4", 0}, {"c5", -1}, {"c6", 0}, {"c7", 0}, {"printed", 0}}),
               {},
               {-1.5, 1.5, -1.5, 1.5},
               {kSigmaNote,
                "trig velocity terms are twice the printed size; printed=1 selects the printed form"}});
  r.push_back({"wave/add_a1_0", "theta = J(y), additive velocities with the integral of cot 2J",
               join(wave_common(0, 1, 0.5, 0, 0, 0.0027),
                    {{"c4", 1}, {"c5", 1}, {"c6", 0}, {"c7", 0}, {"printed", 0}}),
               {},
               {-1, 1, -1.5, 1.5},
               {kSigmaNote,
                "v gains the term c5 x and u ends in c6; printed=1 selects the printed form"}});
  r.push_back({"wave/add_a2_0", "theta = J(x), additive velocities with the integral of cot 2J",
               join(wave_common(1, 0, 0.5, 0, 0, 0.0027), {{"c4", -1}, {"c5", 1}, {"c6", 2}, {"c7", 0}}),
               {},
               {-1.5, 1.5, -1, 1},
               {kSigmaNote}});
  r.push_back({"wave/add_quad", "theta = J(a1 x + a2 y), velocities by two quadratures in xi",
               join(wave_common(2, 1, 0.5, 0, 0, 0.1),
                    {{"omega1", 1}, {"omega2", 0.5}, {"omega3", 0}, {"omega4", 0}, {"c4", 0}, {"c5", 0},
                     {"quad_double_angle", 1}, {"xi_min", -20}, {"xi_max", 6}}),
               {{"zeta1", ""}, {"zeta2", ""}},
               {-1, 1, -1, 1},
               {kSigmaNote, "velocity quadratures implemented as printed"}});
  r.push_back({"wave/mult_e", "theta = J(a1 x + a2 y), multiplicative velocities",
               join(wave_common(-10, 10, 2, 0, 1, 0.8), {{"c4", 1}, {"c5", 10}, {"c6", -10}}),
               {},
               {-3, 3, -3, 3},
               {kSigmaNote}});
  r.push_back({"wave/mult_f", "theta = J(a1 x + a2 y), multiplicative velocities with free c5",
               join(wave_common(-10, 10, 2, 0, 1, 0.8),
                    {{"c4", 1}, {"c5", 1}, {"c6", 10}, {"c7", -10}}),
               {},
               {-3, 3, -3, 3},
               {kSigmaNote}});
  // Similarity family, c1 != 0.
  P simc = {{"c1", 1.5},   {"c2", 0},        {"c3", 0},         {"k", 0.1},           {"xi0", 0.5},
            {"seed_J", 0}, {"xi_min", 0.05}, {"xi_max", 20},    {"printed_sigma", 0}};
  const char* simsig =
      "pressure uses -k c1 ln((x^2 + y^2)|c1 - sin 2(alpha - J)|) + c3; printed_sigma=1 selects the "
      "printed form";
  const char* simrel = "J solves tan(s (c2 - J)/c1) = (c1 tan(alpha - J) - 1)/s, s = sqrt(c1^2 - 1)";
  r.push_back({"sim/add_a", "theta = J(y/x), additive velocities",
               join(simc, {{"c4", 1}, {"c5", 1}, {"c6", 1}, {"c7", 0}}),
               {},
               {0.2, 2, 0.05, 2},
               {simrel, simsig, "dangling trailing term of v dropped"}});
  r.push_back({"sim/add_b", "theta = J(y/x), additive velocities (second case)",
               join(simc, {{"c4", 1}, {"c5", 0}, {"c6", 0}, {"printed", 0}}),
               {},
               {0.2, 2, 0.05, 2},
               {simrel, simsig, "v carries a factor 1/2; printed=1 selects the printed form"}});
  r.push_back({"sim/mult_a", "theta = J(y/x), multiplicative velocities",
               join(simc, {{"c4", 1}, {"c5", 1}, {"c6", 0}, {"c7", 0}}),
               {},
               {0.2, 2, 0.05, 2},
               {simrel, simsig}});
  r.push_back({"sim/mult_c", "theta = J(y/x), multiplicative velocities (third case)",
               join(simc, {{"c4", 1}, {"c5", 0}, {"c6", 0}, {"omega1", 1}, {"printed", 0}}),
               {},
               {0.2, 2, 0.05, 2},
               {simrel, simsig, "v uses c4 in place of omega1; printed=1 selects the printed form"}});
  // Similarity family, c1 = 0.
  r.push_back({"sim/c0_add_a", "theta = 1/2 atan2(2xy, x^2 - y^2), u = -c4 y + F'(y/x)",
               {{"c2", 0}, {"k", 0.027}, {"c4", 0}},
               {{"F", "dn(2*pi*(1 - exp(-2*t^2)), 0.5)"}},
               {0.2, 2, -2, 2},
               {}});
  r.push_back({"sim/c0_add_b", "theta = 1/2 atan2(2xy, x^2 - y^2), u = K'(y/x) - y H(x^2 + y^2) + c4",
               {{"c2", 0}, {"k", 0.027}, {"c4", 0}, {"c5", 0}, {"printed", 0}},
               {{"H", "2*exp(-0.1*t)"}, {"K", "t"}},
               {0.2, 2, -2, 2},
               {"v = (y/x) K' - K + x H + c5; printed=1 selects the printed form"}});
  r.push_back({"sim/c0_mult_a", "theta = 1/2 atan2(2xy, x^2 - y^2), u = y P(x^2 + y^2) + ...",
               {{"c2", 0}, {"k", 0.1}, {"c4", 0}, {"xi0", 1}, {"xi_min", 0.05}, {"xi_max", 20},
                {"printed", 0}},
               {{"P", "t"}, {"Q", "t^2"}},
               {0.2, 2, 0.05, 2},
               {"u uses the integral of Q'/xi; printed=1 selects the printed form"}});
  r.push_back({"sim/c0_mult_b", "theta = 1/2 atan2(2xy, x^2 - y^2), u = F(y/x)",
               {{"c2", 0}, {"k", 0.1}, {"c4", 0}, {"xi0", 0}, {"xi_min", -20}, {"xi_max", 20}},
               {{"F", "sin(t)"}},
               {0.2, 2, -2, 2},
               {}});
  r.push_back({"sim/c0_mult_c", "theta = 1/2 atan2(2xy, x^2 - y^2), power-law velocities",
               {{"c2", 0}, {"k", 0.1}, {"c4", 1}, {"c5", 1}, {"omega2", 1}},
               {},
               {0.2, 2, -2, 2},
               {}});
  // Tau family.
  r.push_back({"tau/add", "sigma = tau - a1 x - a2 y, theta = J(tau), linear-plus-trig velocities",
               {{"a1", 2}, {"a2", 1}, {"c1", 1}, {"c2", 0}, {"c3", 0}, {"k", 0.5}, {"branch", 1},
                {"omega1", 1}, {"omega2", 0.5}, {"omega3", 0}, {"omega4", 0.25}, {"c4", 0}, {"c5", 0},
                {"printed", 0}},
               {},
               {-0.8, 0.8, -0.8, 0.8},
               {"kappa3 numerator uses + 2 k a1", "velocity coefficients rederived; omega3 is derived",
                "printed=1 selects the printed constants and uses omega3 as given"}});
  // Fixtures.
  r.push_back({"fixture/constant", "constant fields",
               {{"theta0", 0.3}, {"sigma0", 1}, {"u0", 1}, {"v0", 0.5}, {"k", 1}},
               {},
               {-1, 1, -1, 1},
               {}});
  r.push_back({"fixture/rotation", "rigid rotation u = -omega y, v = omega x with constant theta, sigma",
               {{"omega", 1}, {"theta0", 0}, {"sigma0", 0}, {"k", 1}},
               {},
               {-1, 1, -1, 1},
               {}});
  r.push_back({"fixture/perturbed", "wave/add_gen defaults with sigma + eps x (must fail)",
               {{"eps", 1e-3}},
               {},
               {-1.5, 1.5, -1.5, 1.5},
               {}});
  return r;
}

WaveParams wave_params(const Args& a, WaveSub sub) {
  WaveParams p;
  p.sub = sub;
  p.a1 = a["a1"];
  p.a2 = a["a2"];
  p.c1 = a["c1"];
  p.c2 = a["c2"];
  p.c3 = a["c3"];
  p.k = a["k"];
  p.printed_sigma = a.flag("printed_sigma");
  return p;
}

SimilarityParams sim_params(const Args& a, SimSub sub) {
  SimilarityParams p;
  p.sub = sub;
  p.c1 = a["c1"];
  p.c2 = a["c2"];
  p.c3 = a["c3"];
  p.k = a["k"];
  p.xi0 = a["xi0"];
  p.seed_J = a["seed_J"];
  p.xi_min = a["xi_min"];
  p.xi_max = a["xi_max"];
  p.printed_sigma = a.flag("printed_sigma");
  return p;
}

pde::FieldMap build(const std::string& id, const Args& a) {
  if (id == "wave/add_gen") {
    WaveParams p = wave_params(a, WaveSub::AddGen);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"], p.c7 = a["c7"];
    p.printed = a.flag("printed");
    return make_wave_solution(p);
  }
  if (id == "wave/add_a1_0" || id == "wave/add_a2_0") {
    bool a1_0 = id == "wave/add_a1_0";
    WaveParams p = wave_params(a, a1_0 ? WaveSub::AddA1_0 : WaveSub::AddA2_0);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"], p.c7 = a["c7"];
    if (a1_0) p.printed = a.flag("printed");
    return make_wave_solution(p);
  }
  if (id == "wave/add_quad") {
    WaveParams p = wave_params(a, WaveSub::AddQuad);
    p.omega1 = a["omega1"], p.omega2 = a["omega2"], p.omega3 = a["omega3"], p.omega4 = a["omega4"];
    p.c4 = a["c4"], p.c5 = a["c5"];
    p.quad_double_angle = a.flag("quad_double_angle");
    p.zeta1 = a.fn("zeta1");
    p.zeta2 = a.fn("zeta2");
    p.quad_xi_min = a["xi_min"];
    p.quad_xi_max = a["xi_max"];
    return make_wave_solution(p);
  }
  if (id == "wave/mult_e") {
    WaveParams p = wave_params(a, WaveSub::MultE);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"];
    return make_wave_solution(p);
  }
  if (id == "wave/mult_f") {
    WaveParams p = wave_params(a, WaveSub::MultF);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"], p.c7 = a["c7"];
    return make_wave_solution(p);
  }
  if (id == "sim/add_a" || id == "sim/mult_a") {
    SimilarityParams p = sim_params(a, id == "sim/add_a" ? SimSub::AddA : SimSub::MultA);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"], p.c7 = a["c7"];
    return make_similarity_solution(p);
  }
  if (id == "sim/add_b" || id == "sim/mult_c") {
    bool b = id == "sim/add_b";
    SimilarityParams p = sim_params(a, b ? SimSub::AddB : SimSub::MultC);
    p.c4 = a["c4"], p.c5 = a["c5"], p.c6 = a["c6"];
    p.printed = a.flag("printed");
    if (!b) p.omega1 = a["omega1"];
    return make_similarity_solution(p);
  }
  if (id.rfind("sim/c0_", 0) == 0) {
    SimilarityParams p;
    p.c1 = 0;
    p.c2 = a["c2"];
    p.k = a["k"];
    p.c4 = a["c4"];
    if (id == "sim/c0_add_a") {
      p.sub = SimSub::C0AddA;
      p.F = a.fn("F");
    } else if (id == "sim/c0_add_b") {
      p.sub = SimSub::C0AddB;
      p.c5 = a["c5"];
      p.H = a.fn("H");
      p.K = a.fn("K");
      p.printed = a.flag("printed");
    } else if (id == "sim/c0_mult_a") {
      p.sub = SimSub::C0MultA;
      p.P = a.fn("P");
      p.Q = a.fn("Q");
      p.xi0 = a["xi0"], p.xi_min = a["xi_min"], p.xi_max = a["xi_max"];
      p.printed = a.flag("printed");
    } else if (id == "sim/c0_mult_b") {
      p.sub = SimSub::C0MultB;
      p.F = a.fn("F");
      p.xi0 = a["xi0"], p.xi_min = a["xi_min"], p.xi_max = a["xi_max"];
    } else {
      p.sub = SimSub::C0MultC;
      p.c5 = a["c5"];
      p.omega2 = a["omega2"];
    }
    return make_similarity_solution(p);
  }
  if (id == "tau/add") {
    TauParams p;
    p.a1 = a["a1"], p.a2 = a["a2"], p.c1 = a["c1"], p.c2 = a["c2"], p.c3 = a["c3"], p.k = a["k"];
    p.branch = static_cast<int>(a["branch"]);
    if (p.branch != a["branch"]) throw ParamError("branch must be +1 or -1");
    p.omega1 = a["omega1"], p.omega2 = a["omega2"], p.omega3 = a["omega3"], p.omega4 = a["omega4"];
    p.c4 = a["c4"], p.c5 = a["c5"];
    p.printed = a.flag("printed");
    return make_tau_solution(p);
  }
  if (id == "fixture/constant")
    return make_constant_solution(a["theta0"], a["sigma0"], a["u0"], a["v0"], a["k"]);
  if (id == "fixture/rotation")
    return make_rotation_solution(a["omega"], a["theta0"], a["sigma0"], a["k"]);
  if (id == "fixture/perturbed") {
    pde::FieldMap F = build_family("wave/add_gen", {});
    double eps = a["eps"];
    auto base = F.eval;
    auto grad = F.gradients;
    F.eval = [base, eps](double x, double y) {
      pde::State s = base(x, y);
      s.sigma += eps * x;
      return s;
    };
    F.gradients = [grad, eps](double x, double y) {
      pde::Gradients g = grad(x, y);
      g.sigma_x += eps;
      return g;
    };
    return F;
  }
  throw ParamError("unknown family id '" + id + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> reg = make_registry();
  return reg;
}

const FamilyInfo& family_info(const std::string& id) {
  for (const auto& f : families())
    if (f.id == id) return f;
  throw ParamError("unknown family id '" + id + "'");
}

pde::FieldMap build_family(const std::string& id, const ParamSet& params) {
  const FamilyInfo& info = family_info(id);
  Args a(info, params);
  pde::FieldMap F = build(id, a);
  F.family = id;
  for (const auto& d : info.deviations) F.notes.push_back(d);
  return F;
}

pde::FieldMap make_constant_solution(double theta, double sigma, double u, double v, double k) {
  pde::FieldMap F;
  F.family = "fixture/constant";
  F.k = k;
  F.domain = [](double, double) { return true; };
  F.eval = [=](double, double) { return pde::State{theta, sigma, u, v}; };
  F.gradients = [](double, double) { return pde::Gradients{}; };
  return F;
}

pde::FieldMap make_rotation_solution(double omega, double theta, double sigma, double k) {
  pde::FieldMap F;
  F.family = "fixture/rotation";
  F.k = k;
  F.domain = [](double, double) { return true; };
  F.eval = [=](double x, double y) { return pde::State{theta, sigma, -omega * y, omega * x}; };
  F.gradients = [=](double, double) {
    pde::Gradients g;
    g.u_y = -omega;
    g.v_x = omega;
    return g;
  };
  return F;
}

SolutionReport verify_field(const pde::FieldMap& F, const VerifyOptions& opt) {
  SolutionReport r;
  r.family = F.family;
  r.seed = opt.seed;
  r.region = opt.region;
  r.requested = opt.n;
  r.analytic = F.has_gradients();
  r.tol_analytic = opt.tol_analytic;
  r.tol_fd = opt.tol_fd;
  r.tol_compat = opt.tol_compat;
  r.notes = F.notes;

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> ux(opt.region.xmin, opt.region.xmax),
      uy(opt.region.ymin, opt.region.ymax);
  auto stencil_ok = [&](double x, double y) {
    double h = pde::default_step(x, y, 2e-4);
    for (int i = -1; i <= 1; ++i)
      for (int j = -1; j <= 1; ++j)
        if (!F.contains(x + i * h, y + j * h)) return false;
    return true;
  };
  auto upd = [](pde::Residual4& m, const pde::Residual4& v) {
    m.r_a = std::max(m.r_a, std::abs(v.r_a));
    m.r_b = std::max(m.r_b, std::abs(v.r_b));
    m.r_c = std::max(m.r_c, std::abs(v.r_c));
    m.r_d = std::max(m.r_d, std::abs(v.r_d));
  };
  bool finite = true;
  long trials = 0, limit = 100L * opt.n;
  while (r.samples < opt.n && trials < limit) {
    ++trials;
    double x = ux(rng), y = uy(rng);
    if (std::abs(x) < opt.min_abs_x) continue;
    if (!stencil_ok(x, y)) continue;
    ++r.samples;
    if (r.analytic) upd(r.max_analytic, pde::residual(F, x, y, pde::Scheme::analytic()));
    upd(r.max_fd, pde::residual(F, x, y, pde::Scheme::fd(opt.fd_h)));
    r.max_compat = std::max(r.max_compat, pde::compatibility_defect(F, x, y));
    if (!std::isfinite(r.max_fd.max_abs()) || !std::isfinite(r.max_compat)) finite = false;
  }
  if (r.samples == 0) throw EmptyDomainError("no sample landed in the domain after " + std::to_string(limit) + " trials");
  if (r.samples < opt.n)
    r.notes.push_back("only " + std::to_string(r.samples) + " of " + std::to_string(opt.n) +
                      " samples landed in the domain");
  r.pass = finite && r.samples == opt.n && r.max_fd.max_abs() <= opt.tol_fd &&
           r.max_compat <= opt.tol_compat && (!r.analytic || r.max_analytic.max_abs() <= opt.tol_analytic);
  return r;
}

SolutionReport verify_family(const std::string& id, const ParamSet& params, const VerifyOptions& opt) {
  pde::FieldMap F = build_family(id, params);
  SolutionReport r = verify_field(F, opt);
  r.params = params;
  // Echo the full parameter set, defaults included.
  const FamilyInfo& info = family_info(id);
  for (const auto& [name, def] : info.params)
    if (!r.params.values.count(name)) r.params.values[name] = def;
  for (const auto& [name, def] : info.functions)
    if (!r.params.functions.count(name) && !def.empty()) r.params.functions[name] = def;
  return r;
}

std::string SolutionReport::to_text() const {
  std::ostringstream os;
  os << "version=" << version << "\n";
  os << "family=" << family << "\n";
  for (const auto& [k, v] : params.values) os << "param." << k << "=" << fmt(v) << "\n";
  for (const auto& [k, v] : params.functions) os << "function." << k << "=" << v << "\n";
  os << "seed=" << seed << "\n";
  os << "region=" << fmt(region.xmin) << "," << fmt(region.xmax) << "," << fmt(region.ymin) << ","
     << fmt(region.ymax) << "\n";
  os << "samples=" << samples << "\n";
  if (analytic) {
    os << "analytic.r_a=" << fmt(max_analytic.r_a) << "\n";
    os << "analytic.r_b=" << fmt(max_analytic.r_b) << "\n";
    os << "analytic.r_c=" << fmt(max_analytic.r_c) << "\n";
    os << "analytic.r_d=" << fmt(max_analytic.r_d) << "\n";
    os << "tol_analytic=" << fmt(tol_analytic) << "\n";
  } else {
    os << "analytic=unavailable\n";
  }
  os << "fd.r_a=" << fmt(max_fd.r_a) << "\n";
  os << "fd.r_b=" << fmt(max_fd.r_b) << "\n";
  os << "fd.r_c=" << fmt(max_fd.r_c) << "\n";
  os << "fd.r_d=" << fmt(max_fd.r_d) << "\n";
  os << "tol_fd=" << fmt(tol_fd) << "\n";
  os << "compatibility=" << fmt(max_compat) << "\n";
  os << "tol_compat=" << fmt(tol_compat) << "\n";
  for (const auto& n : notes) os << "note=" << n << "\n";
  os << "status=" << status() << "\n";
  os << "verdict=" << (pass ? "pass" : "fail") << "\n";
  return os.str();
}

std::string SolutionReport::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = version;
  j["family"] = family;
  j["params"] = params.values;
  j["functions"] = params.functions;
  j["seed"] = seed;
  j["region"] = {region.xmin, region.xmax, region.ymin, region.ymax};
  j["samples"] = samples;
  auto res = [](const pde::Residual4& r) {
    return nlohmann::ordered_json{{"r_a", r.r_a}, {"r_b", r.r_b}, {"r_c", r.r_c}, {"r_d", r.r_d}};
  };
  if (analytic) j["analytic"] = res(max_analytic);
  else j["analytic"] = nullptr;
  j["fd"] = res(max_fd);
  j["compatibility"] = max_compat;
  j["tolerances"] = {{"analytic", tol_analytic}, {"fd", tol_fd}, {"compatibility", tol_compat}};
  j["notes"] = notes;
  j["status"] = status();
  j["pass"] = pass;
  return j.dump(2);
}

}  // namespace plastiflow::solutions
