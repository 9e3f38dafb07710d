#include "plastiflow/die.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "plastiflow/errors.hpp"

namespace plastiflow::die {

std::string num(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int Raster::cells_in_domain() const {
  return static_cast<int>(std::count(in_domain.begin(), in_domain.end(), 1));
}

namespace {

flow::Curve both_ways(const std::function<flow::Curve(flow::Direction)>& run, const std::string& label) {
  flow::Curve b = run(flow::Direction::Backward), f = run(flow::Direction::Forward);
  flow::Curve c = flow::join(b, f);
  c.label = label;
  return c;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << text;
  if (!os) throw IoError("write failed for " + path);
}

}  // namespace

DieGeometry build_die(const pde::FieldMap& F, const DieScenario& s) {
  const Rect& r = s.region;
  if (!(r.xmin < r.xmax && r.ymin < r.ymax)) throw ParamError("die region is empty");
  if (s.nx < 1 || s.ny < 1) throw ParamError("raster resolution must be positive");
  DieGeometry g;
  g.bounds = r;
  auto check_seed = [&](const Point& p) {
    if (!(p.x >= r.xmin && p.x <= r.xmax && p.y >= r.ymin && p.y <= r.ymax))
      throw DomainError("seed (" + num(p.x) + ", " + num(p.y) + ") outside the region");
    if (!F.contains(p.x, p.y))
      throw DomainError("seed (" + num(p.x) + ", " + num(p.y) + ") outside the family domain");
  };
  int w = 0;
  for (const Point& p : s.wall_seeds) {
    check_seed(p);
    g.walls.push_back(both_ways(
        [&](flow::Direction d) { return flow::flowline(F, p.x, p.y, s.dt, s.n_max, d, &r); },
        "W" + std::to_string(++w)));
  }
  for (const LimitSpec& l : s.limits) {
    int n = 0;
    for (const Point& p : l.seeds) {
      check_seed(p);
      std::string label = l.label + (l.seeds.size() > 1 ? "." + std::to_string(++n) : "");
      g.limits.push_back(both_ways(
          [&](flow::Direction d) {
            return flow::plasticity_boundary(F, l.feed, p.x, p.y, s.dt, s.n_max, d, &r);
          },
          label));
      g.limit_feeds.push_back(l.feed);
    }
  }
  Raster& R = g.pressure;
  R.region = r;
  R.nx = s.nx;
  R.ny = s.ny;
  R.sigma.assign(static_cast<std::size_t>(s.nx) * s.ny, std::numeric_limits<double>::quiet_NaN());
  R.in_domain.assign(R.sigma.size(), 0);
  for (int j = 0; j < s.ny; ++j)
    for (int i = 0; i < s.nx; ++i) {
      double x = R.cx(i), y = R.cy(j);
      if (!F.contains(x, y)) continue;
      std::size_t k = static_cast<std::size_t>(j) * s.nx + i;
      R.in_domain[k] = 1;
      R.sigma[k] = F.eval(x, y).sigma;
    }
  return g;
}

DieGeometry build_die(const DieScenario& s) {
  return build_die(solutions::build_family(s.family, s.params), s);
}

double lightness(double sigma, double lo, double hi) {
  if (!(hi > lo)) return 90;
  return 90 - 70 * (sigma - lo) / (hi - lo);
}

std::string svg(const DieGeometry& g) {
  const Rect& b = g.bounds;
  const double width = 800, scale = width / (b.xmax - b.xmin), height = (b.ymax - b.ymin) * scale;
  auto px = [&](double x) { return num((x - b.xmin) * scale); };
  auto py = [&](double y) { return num((b.ymax - y) * scale); };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  const Raster& R = g.pressure;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k < R.sigma.size(); ++k)
    if (R.in_domain[k]) {
      lo = std::min(lo, R.sigma[k]);
      hi = std::max(hi, R.sigma[k]);
    }
  os << "<g id=\"pressure\" shape-rendering=\"crispEdges\">\n";
  double cw = (b.xmax - b.xmin) / std::max(R.nx, 1), ch = (b.ymax - b.ymin) / std::max(R.ny, 1);
  for (int j = 0; j < R.ny; ++j)
    for (int i = 0; i < R.nx; ++i) {
      std::size_t k = static_cast<std::size_t>(j) * R.nx + i;
      if (!R.in_domain[k]) continue;
      std::string L = num(lightness(R.sigma[k], lo, hi));
      double x0 = b.xmin + i * cw, y1 = b.ymin + (j + 1) * ch;
      os << "<rect x=\"" << px(x0) << "\" y=\"" << py(y1) << "\" width=\"" << num(cw * scale) << "\" height=\""
         << num(ch * scale) << "\" fill=\"rgb(" << L << "%," << L << "%," << L << "%)\" data-sigma=\""
         << num(R.sigma[k]) << "\"/>\n";
    }
  os << "</g>\n";
  auto poly = [&](const flow::Curve& c, const std::string& style) {
    os << "<polyline fill=\"none\" " << style << " points=\"";
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
      os << (i ? " " : "") << px(c.nodes[i].x) << "," << py(c.nodes[i].y);
    os << "\"/>\n";
  };
  os << "<g id=\"walls\">\n";
  for (const auto& c : g.walls) poly(c, "stroke=\"black\" stroke-width=\"2\"");
  os << "</g>\n<g id=\"limits\">\n";
  for (const auto& c : g.limits) {
    poly(c, "stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"8,5\"");
    if (!c.nodes.empty()) {
      const auto& n = c.nodes[c.nodes.size() / 2];
      os << "<text x=\"" << px(n.x) << "\" y=\"" << py(n.y) << "\" font-family=\"sans-serif\" font-size=\"16\">"
         << c.label << "</text>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

namespace {

std::string curves_csv(const std::vector<flow::Curve>& cs) {
  std::ostringstream os;
  os << "curve_id,node_index,x,y,u,v,sigma\n";
  for (const auto& c : cs)
    for (std::size_t i = 0; i < c.nodes.size(); ++i) {
      const auto& n = c.nodes[i];
      os << c.label << "," << i << "," << num(n.x) << "," << num(n.y) << "," << num(n.u) << "," << num(n.v) << ","
         << num(n.sigma) << "\n";
    }
  return os.str();
}

}  // namespace

std::string walls_csv(const DieGeometry& g) { return curves_csv(g.walls); }
std::string limits_csv(const DieGeometry& g) { return curves_csv(g.limits); }

std::string raster_csv(const DieGeometry& g) {
  const Raster& R = g.pressure;
  std::ostringstream os;
  os << "i,j,x,y,sigma,in_domain\n";
  for (int j = 0; j < R.ny; ++j)
    for (int i = 0; i < R.nx; ++i) {
      std::size_t k = static_cast<std::size_t>(j) * R.nx + i;
      os << i << "," << j << "," << num(R.cx(i)) << "," << num(R.cy(j)) << ","
         << (R.in_domain[k] ? num(R.sigma[k]) : "") << "," << int(R.in_domain[k]) << "\n";
    }
  return os.str();
}

void export_svg(const DieGeometry& g, const std::string& path) { write_file(path, svg(g)); }

void export_csv(const DieGeometry& g, const std::string& dir) {
  write_file(dir + "/walls.csv", walls_csv(g));
  write_file(dir + "/limits.csv", limits_csv(g));
  write_file(dir + "/raster.csv", raster_csv(g));
}

PropertyReport check_properties(const pde::FieldMap& F, const DieGeometry& g, double tol) {
  PropertyReport p;
  p.tol = tol;
  for (const auto& c : g.walls) p.wall_tangency = std::max(p.wall_tangency, flow::flow_tangency(c));
  for (std::size_t i = 0; i < g.limits.size(); ++i)
    p.limit_tangency = std::max(p.limit_tangency, flow::boundary_tangency(g.limits[i], g.limit_feeds[i]));
  const Raster& R = g.pressure;
  for (int j = 0; j < R.ny; ++j)
    for (int i = 0; i < R.nx; ++i)
      if (bool(R.in_domain[static_cast<std::size_t>(j) * R.nx + i]) != F.contains(R.cx(i), R.cy(j)))
        p.mask_matches_domain = false;
  p.raster_nonempty = R.cells_in_domain() > 0;
  // Order cells by sigma; the emitted lightness must never increase and must
  // strictly decrease whenever sigma increases by more than rounding noise.
  std::vector<std::size_t> idx;
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t k = 0; k < R.sigma.size(); ++k)
    if (R.in_domain[k]) {
      idx.push_back(k);
      lo = std::min(lo, R.sigma[k]);
      hi = std::max(hi, R.sigma[k]);
    }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return R.sigma[a] < R.sigma[b]; });
  for (std::size_t n = 1; n < idx.size(); ++n) {
    double sa = R.sigma[idx[n - 1]], sb = R.sigma[idx[n]];
    double la = std::stod(num(lightness(sa, lo, hi))), lb = std::stod(num(lightness(sb, lo, hi)));
    if (lb > la || (sb - sa > 1e-12 * (hi - lo) && !(lb < la))) p.shading_monotone = false;
  }
  std::ostringstream os;
  os << "walls=" << g.walls.size();
  p.lines.push_back(os.str());
  p.lines.push_back("limits=" + std::to_string(g.limits.size()));
  p.lines.push_back("raster_cells_in_domain=" + std::to_string(R.cells_in_domain()));
  p.lines.push_back("wall_tangency=" + num(p.wall_tangency));
  p.lines.push_back("limit_tangency=" + num(p.limit_tangency));
  p.lines.push_back(std::string("mask_matches_domain=") + (p.mask_matches_domain ? "yes" : "no"));
  p.lines.push_back(std::string("shading_monotone=") + (p.shading_monotone ? "yes" : "no"));
  if (!p.raster_nonempty) p.lines.push_back("warning=empty raster: no cell center lies in the domain");
  p.pass = p.wall_tangency < tol && p.limit_tangency < tol && p.mask_matches_domain && p.shading_monotone &&
           p.raster_nonempty;
  p.lines.push_back(std::string("verdict=") + (p.pass ? "pass" : "fail"));
  return p;
}

}  // namespace plastiflow::die
