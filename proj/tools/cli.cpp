#include "cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "plastiflow/die.hpp"
#include "plastiflow/errors.hpp"
#include "plastiflow/flow.hpp"
#include "plastiflow/solutions.hpp"
#include "plastiflow/symmetry.hpp"
#include "scenario.hpp"

namespace plastiflow::cli {

namespace {

using die::num;

constexpr double kTangencyTol = 1e-4;
constexpr double kAnnihilationTol = 1e-6;

struct Flags {
  std::string scenario;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_analytic, tol_fd, dt;
  std::optional<int> steps;
  std::optional<double> x, y;
  bool mutate = false;
};

// Domain wording for out-of-domain messages.
std::string domain_text(const std::string& family) {
  if (family.rfind("wave/", 0) == 0) return "|c1*(a1*x + a2*y) + c2| < a1^2 + a2^2";
  if (family.rfind("sim/c0_", 0) == 0) return "x != 0 with y/x inside the function range";
  if (family.rfind("sim/", 0) == 0) return "x > 0, y > 0 with y/x on the continued branch";
  if (family.rfind("tau/", 0) == 0) return "|tau + c2| <= sqrt(lambda^2 + mu^2)";
  return "the family domain";
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path);
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

int cmd_verify_algebra(const Flags& f, std::ostream& out) {
  std::uint64_t seed = f.seed.value_or(1);
  symmetry::StructureTable table = symmetry::commutation_table();
  if (f.mutate) {
    // Flip the sign of the first nonzero structure constant.
    bool done = false;
    for (int i = 0; i < symmetry::kDim && !done; ++i)
      for (int j = 0; j < symmetry::kDim && !done; ++j)
        for (double& c : table[i][j].coeffs)
          if (!done && c != 0) {
            c = -c;
            done = true;
          }
    out << "mutation=on\n";
  }
  bool pass = true;
  auto comm = symmetry::verify_commutation_table(10, seed, table);
  for (const auto& l : comm.lines) out << "bracket " << l << "\n";
  out << "commutation.pairs=" << comm.pairs << "\n";
  out << "commutation.samples=" << comm.samples << "\n";
  out << "commutation.max_defect=" << num(comm.max_defect) << "\n";
  pass = pass && comm.pairs == 64 && comm.max_defect == 0;

  double jac = symmetry::jacobi_defect(table);
  out << "jacobi.max_defect=" << num(jac) << "\n";
  pass = pass && jac == 0;
  for (auto [name, which] : {std::pair{"R1", symmetry::Automorphism::R1}, std::pair{"R2", symmetry::Automorphism::R2}}) {
    double d = symmetry::automorphism_defect(which, table);
    out << "automorphism." << name << ".max_defect=" << num(d) << "\n";
    pass = pass && d == 0;
  }

  int rows = 0;
  double worst = 0;
  for (const auto& r : symmetry::verify_annihilation(2, 20, seed)) {
    out << "annihilation " << r.id << " well_formed=" << (r.well_formed ? 1 : 0);
    if (r.well_formed) {
      out << " evaluations=" << r.evaluations << " max_defect=" << num(r.max_defect);
      ++rows;
      worst = std::max(worst, r.max_defect);
      pass = pass && r.max_defect < kAnnihilationTol && r.evaluations > 0;
    }
    out << "\n";
  }
  out << "annihilation.rows=" << rows << "\n";
  out << "annihilation.max_defect=" << num(worst) << "\n";
  out << "annihilation.tol=" << num(kAnnihilationTol) << "\n";
  pass = pass && rows >= 10;
  out << "seed=" << seed << "\n";
  out << "verdict=" << (pass ? "pass" : "fail") << "\n";
  return pass ? 0 : 1;
}

solutions::VerifyOptions verify_options(const Scenario& s, const Flags& f) {
  solutions::VerifyOptions o;
  if (s.verify) o = *s.verify;
  else o.region = solutions::family_info(s.family).region;
  if (f.seed) o.seed = *f.seed;
  if (f.tol_analytic) o.tol_analytic = *f.tol_analytic;
  if (f.tol_fd) o.tol_fd = *f.tol_fd;
  return o;
}

int cmd_verify_solution(const Flags& f, std::ostream& out) {
  Scenario s = load_scenario(f.scenario);
  auto rep = solutions::verify_family(s.family, s.params, verify_options(s, f));
  out << rep.to_text();
  out << "json=" << rep.to_json() << "\n";
  return rep.pass ? 0 : 1;
}

void print_residual(std::ostream& out, const std::string& prefix, const pde::Residual4& r) {
  out << prefix << ".r_a=" << num(r.r_a) << "\n";
  out << prefix << ".r_b=" << num(r.r_b) << "\n";
  out << prefix << ".r_c=" << num(r.r_c) << "\n";
  out << prefix << ".r_d=" << num(r.r_d) << "\n";
}

int cmd_sample(const Flags& f, std::ostream& out) {
  Scenario s = load_scenario(f.scenario);
  die::Point p = s.sample.value_or(die::Point{0, 0});
  if (f.x) p.x = *f.x;
  if (f.y) p.y = *f.y;
  pde::FieldMap F = solutions::build_family(s.family, s.params);
  double h = pde::default_step(p.x, p.y, 2e-4);
  auto inside = [&](double x, double y) {
    try {
      return F.contains(x, y);
    } catch (const Error&) {
      return false;
    }
  };
  if (!inside(p.x, p.y))
    throw DomainError("point (" + num(p.x) + ", " + num(p.y) + ") is outside the domain " + domain_text(s.family) +
                      " of " + s.family);
  pde::State st = F(p.x, p.y);
  out << "version=" << solutions::kVersion << "\n";
  out << "family=" << s.family << "\n";
  out << "x=" << num(p.x) << "\n";
  out << "y=" << num(p.y) << "\n";
  out << "theta=" << num(st.theta) << "\n";
  out << "sigma=" << num(st.sigma) << "\n";
  out << "u=" << num(st.u) << "\n";
  out << "v=" << num(st.v) << "\n";
  if (F.has_gradients()) print_residual(out, "analytic", pde::residual(F, p.x, p.y));
  else out << "analytic=unavailable\n";
  bool stencil = inside(p.x - h, p.y) && inside(p.x + h, p.y) && inside(p.x, p.y - h) && inside(p.x, p.y + h);
  if (stencil) print_residual(out, "fd", pde::residual(F, p.x, p.y, pde::Scheme::fd()));
  else out << "fd=unavailable\n";
  return 0;
}

std::string curves_csv(const std::vector<flow::Curve>& cs) {
  std::ostringstream os;
  os << "curve,index,x,y,u,v,sigma\n";
  for (const auto& c : cs)
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      const auto& n = c.nodes[i];
      os << c.label << "," << i << "," << num(n.x) << "," << num(n.y) << "," << num(n.u) << "," << num(n.v) << ","
         << num(n.sigma) << "\n";
    }
  return os.str();
}

enum class CurveKind { Flow, Boundary };

int cmd_curves(const Flags& f, std::ostream& out, CurveKind kind) {
  Scenario s = load_scenario(f.scenario);
  const auto& block = kind == CurveKind::Flow ? s.flowline : s.boundary;
  const char* name = kind == CurveKind::Flow ? "flowline" : "boundary";
  if (!block) throw ParseError(std::string("scenario has no ") + name + " block", 0, name);
  CurveBlock b = *block;
  if (f.dt) b.dt = *f.dt;
  if (f.steps) b.steps = *f.steps;
  if (!(b.dt > 0) || b.steps < 1) throw ParamError("dt must be positive and steps at least 1");
  pde::FieldMap F = solutions::build_family(s.family, s.params);
  solutions::Rect region = b.region.value_or(solutions::family_info(s.family).region);

  auto integrate = [&](const die::Point& p, flow::Direction d) {
    if (kind == CurveKind::Flow) return flow::flowline(F, p.x, p.y, b.dt, b.steps, d, &region);
    if (b.mode == "feed") return flow::plasticity_boundary(F, b.feed, p.x, p.y, b.dt, b.steps, d, &region);
    return flow::slip_line(F, p.x, p.y, b.dt, b.steps, b.mode == "slip_orthogonal", d, &region);
  };
  std::vector<flow::Curve> curves;
  bool pass = true;
  int i = 0;
  for (const auto& p : b.seeds) {
    flow::Curve c;
    if (b.direction == "forward") c = integrate(p, flow::Direction::Forward);
    else if (b.direction == "backward") c = integrate(p, flow::Direction::Backward);
    else c = flow::join(integrate(p, flow::Direction::Backward), integrate(p, flow::Direction::Forward));
    c.label = std::string(kind == CurveKind::Flow ? "F" : "L") + std::to_string(++i);
    out << "curve=" << c.label << " seed=" << num(p.x) << "," << num(p.y) << " nodes=" << c.nodes.size()
        << " stop=" << flow::to_string(c.stop);
    if (kind == CurveKind::Flow || b.mode == "feed") {
      double t = kind == CurveKind::Flow ? flow::flow_tangency(c) : flow::boundary_tangency(c, b.feed);
      out << " tangency=" << num(t);
      pass = pass && t < kTangencyTol;
    }
    out << "\n";
    curves.push_back(std::move(c));
  }
  if (!f.out.empty()) {
    std::filesystem::create_directories(f.out);
    std::string path = (std::filesystem::path(f.out) / (kind == CurveKind::Flow ? "flowlines.csv" : "boundaries.csv")).string();
    write_file(path, curves_csv(curves));
    out << "wrote=" << path << "\n";
  }
  out << "tol=" << num(kTangencyTol) << "\n";
  out << "verdict=" << (pass ? "pass" : "fail") << "\n";
  return pass ? 0 : 1;
}

int cmd_die(const Flags& f, std::ostream& out, std::ostream& err) {
  Scenario s = load_scenario(f.scenario);
  if (!s.die) throw ParseError("scenario has no die block", 0, "die");
  die::DieScenario ds = *s.die;
  if (f.dt) ds.dt = *f.dt;
  if (f.steps) ds.n_max = *f.steps;
  if (f.out.empty()) throw ParamError("die requires --out DIR");
  pde::FieldMap F = solutions::build_family(ds.family, ds.params);

  int cells = 0;
  die::Raster probe{ds.region, ds.nx, ds.ny, {}, {}};
  for (int j = 0; j < ds.ny; ++j)
    for (int i = 0; i < ds.nx; ++i)
      if (F.contains(probe.cx(i), probe.cy(j))) ++cells;
  if (cells == 0) {
    err << "warning: empty raster, no cell of the region lies in the domain of " << ds.family << "\n";
    out << "raster.cells_in_domain=0\nverdict=fail\n";
    return 1;
  }

  die::DieGeometry g = die::build_die(F, ds);
  std::filesystem::create_directories(f.out);
  std::filesystem::path dir(f.out);
  die::export_svg(g, (dir / "die.svg").string());
  die::export_csv(g, dir.string());
  auto rep = die::check_properties(F, g);
  out << "family=" << ds.family << "\n";
  for (const auto& c : g.walls)
    out << "wall=" << c.label << " nodes=" << c.nodes.size() << " stop=" << flow::to_string(c.stop) << "\n";
  for (const auto& c : g.limits)
    out << "limit=" << c.label << " nodes=" << c.nodes.size() << " stop=" << flow::to_string(c.stop) << "\n";
  out << "raster.cells_in_domain=" << g.pressure.cells_in_domain() << "\n";
  for (const auto& l : rep.lines)
    if (l.rfind("verdict=", 0) != 0) out << l << "\n";
  for (const char* name : {"die.svg", "walls.csv", "limits.csv", "raster.csv"})
    out << "wrote=" << (dir / name).string() << "\n";
  out << "verdict=" << (rep.pass ? "pass" : "fail") << "\n";
  return rep.pass ? 0 : 1;
}

int cmd_list_families(std::ostream& out) {
  for (const auto& fi : solutions::families()) {
    out << fi.id << "  " << fi.summary << "\n";
    for (const auto& [n, v] : fi.params) out << "  param " << n << "=" << num(v) << "\n";
    for (const auto& [n, v] : fi.functions) out << "  function " << n << "=" << (v.empty() ? "(unset)" : v) << "\n";
    out << "  region=" << num(fi.region.xmin) << "," << num(fi.region.xmax) << "," << num(fi.region.ymin) << ","
        << num(fi.region.ymax) << "\n";
    for (const auto& d : fi.deviations) out << "  deviation " << d << "\n";
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Invariant solutions of the plane plastic flow equations"};
  app.require_subcommand(1);
  Flags f;

  auto scenario = [&](CLI::App* c) { c->add_option("--scenario", f.scenario, "Scenario JSON file")->required(); };
  auto verify = [&](CLI::App* c) {
    c->add_option("--seed", f.seed, "Sampling seed");
    c->add_option("--tol-analytic", f.tol_analytic, "Tolerance on analytic residuals");
    c->add_option("--tol-fd", f.tol_fd, "Tolerance on finite-difference residuals");
  };
  auto integ = [&](CLI::App* c) {
    c->add_option("--dt", f.dt, "Integration step");
    c->add_option("--steps", f.steps, "Maximum number of steps");
  };

  auto* alg = app.add_subcommand("verify-algebra", "Check the symmetry algebra");
  alg->add_option("--seed", f.seed, "Sampling seed");
  alg->add_flag("--mutate", f.mutate, "Flip one structure constant (test fixture)")->group("");
  auto* ver = app.add_subcommand("verify-solution", "Check a family against the governing equations");
  scenario(ver);
  verify(ver);
  auto* smp = app.add_subcommand("sample", "Evaluate the fields and residuals at one point");
  scenario(smp);
  smp->add_option("--x", f.x, "Abscissa");
  smp->add_option("--y", f.y, "Ordinate");
  auto* flw = app.add_subcommand("flowline", "Integrate flowlines");
  scenario(flw);
  integ(flw);
  flw->add_option("--out", f.out, "Directory for flowlines.csv");
  auto* bnd = app.add_subcommand("boundary", "Integrate plasticity limits or slip lines");
  scenario(bnd);
  integ(bnd);
  bnd->add_option("--out", f.out, "Directory for boundaries.csv");
  auto* diec = app.add_subcommand("die", "Build die walls, limits and the pressure raster");
  scenario(diec);
  integ(diec);
  diec->add_option("--out", f.out, "Output directory")->required();
  auto* lst = app.add_subcommand("list-families", "List solution families and parameters");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (alg->parsed()) return cmd_verify_algebra(f, out);
    if (ver->parsed()) return cmd_verify_solution(f, out);
    if (smp->parsed()) return cmd_sample(f, out);
    if (flw->parsed()) return cmd_curves(f, out, CurveKind::Flow);
    if (bnd->parsed()) return cmd_curves(f, out, CurveKind::Boundary);
    if (diec->parsed()) return cmd_die(f, out, err);
    if (lst->parsed()) return cmd_list_families(out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "error: no command\n";
  return 2;
}

}  // namespace plastiflow::cli
