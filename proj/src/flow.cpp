#include "plastiflow/flow.hpp"

#include <cmath>
#include <functional>

#include "plastiflow/errors.hpp"

namespace plastiflow::flow {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::StepsExhausted:
      return "steps_exhausted";
    case StopReason::LeftDomain:
      return "left_domain";
    case StopReason::LeftRegion:
      return "left_region";
    case StopReason::Stagnation:
      return "stagnation";
  }
  return "unknown";
}

namespace {

struct Vec {
  double x, y;
};
using VecField = std::function<Vec(const pde::State&)>;

bool inside(const Rect& r, double x, double y) {
  return x >= r.xmin && x <= r.xmax && y >= r.ymin && y <= r.ymax;
}

Node node_at(const pde::FieldMap& F, double x, double y) {
  pde::State s = F(x, y);
  return {x, y, s.u, s.v, s.sigma};
}

// The rectangle edge crossed first by the segment a -> b: axis 0 is x, 1 is y.
struct Edge {
  int axis = 0;
  double value = 0, t = 1;
};

Edge exit_edge(const Rect& r, double ax, double ay, double bx, double by) {
  Edge e;
  auto cut = [&](double a, double b, double lim, int axis) {
    if (b != a) {
      double s = (lim - a) / (b - a);
      if (s >= 0 && s < e.t) e = {axis, lim, s};
    }
  };
  if (bx < r.xmin) cut(ax, bx, r.xmin, 0);
  if (bx > r.xmax) cut(ax, bx, r.xmax, 0);
  if (by < r.ymin) cut(ay, by, r.ymin, 1);
  if (by > r.ymax) cut(ay, by, r.ymax, 1);
  return e;
}

class Stepper {
 public:
  Stepper(const pde::FieldMap& F, const VecField& field) : F_(F), field_(field) {}

  bool eval(double px, double py, Vec& out) const {
    if (!F_.contains(px, py)) return false;
    out = field_(F_.eval(px, py));
    return std::isfinite(out.x) && std::isfinite(out.y);
  }

  // Classical RK4 step of size h from (x, y) with k1 already known.
  bool step(double x, double y, const Vec& k1, double h, double& nx, double& ny) const {
    Vec k2{}, k3{}, k4{};
    if (!eval(x + 0.5 * h * k1.x, y + 0.5 * h * k1.y, k2) || !eval(x + 0.5 * h * k2.x, y + 0.5 * h * k2.y, k3) ||
        !eval(x + h * k3.x, y + h * k3.y, k4))
      return false;
    nx = x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
    ny = y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y);
    return std::isfinite(nx) && std::isfinite(ny);
  }

 private:
  const pde::FieldMap& F_;
  const VecField& field_;
};

// Shortens the step that leaves the rectangle so that it ends on the crossed
// edge. The linear interpolation of the full step seeds a secant search on
// the step fraction; the result stays on the integrated trajectory.
bool clip_step(const Stepper& st, const Rect& r, double x, double y, const Vec& k1, double h, double nx,
               double ny, double& cx, double& cy) {
  Edge e = exit_edge(r, x, y, nx, ny);
  auto dist = [&](double px, double py) { return (e.axis == 0 ? px : py) - e.value; };
  double t0 = 0, d0 = dist(x, y), t1 = 1, d1 = dist(nx, ny);
  double t = e.t, px = x + t * (nx - x), py = y + t * (ny - y);
  for (int it = 0; it < 60 && t > 0; ++it) {
    if (!st.step(x, y, k1, t * h, px, py)) return false;
    double d = dist(px, py);
    if (std::abs(d) <= 1e-14 * std::max(1.0, std::abs(e.value))) break;
    if ((d < 0) == (d0 < 0)) {
      t0 = t;
      d0 = d;
    } else {
      t1 = t;
      d1 = d;
    }
    t = t0 - d0 * (t1 - t0) / (d1 - d0);
    if (!(t > t0 && t < t1)) t = 0.5 * (t0 + t1);
  }
  cx = e.axis == 0 ? e.value : px;
  cy = e.axis == 1 ? e.value : py;
  return t > 0;
}

Curve integrate(const pde::FieldMap& F, const VecField& field, double x0, double y0, double dt, int n_max,
                Direction dir, const Rect* clip) {
  if (!(dt > 0)) throw ParamError("dt must be positive");
  if (!F.contains(x0, y0)) throw DomainError("seed point outside the family domain");
  if (clip && !inside(*clip, x0, y0)) throw DomainError("seed point outside the region");
  double h = dir == Direction::Forward ? dt : -dt;
  Stepper st(F, field);
  Curve c;
  c.nodes.push_back(node_at(F, x0, y0));
  double x = x0, y = y0;
  for (int step = 0; step < n_max; ++step) {
    Vec k1{};
    if (!st.eval(x, y, k1)) {
      c.stop = StopReason::LeftDomain;
      return c;
    }
    if (std::hypot(k1.x, k1.y) < kStagnation) {
      c.stop = StopReason::Stagnation;
      return c;
    }
    double nx = 0, ny = 0;
    if (!st.step(x, y, k1, h, nx, ny) || !F.contains(nx, ny)) {
      c.stop = StopReason::LeftDomain;
      return c;
    }
    if (clip && !inside(*clip, nx, ny)) {
      double cx = 0, cy = 0;
      if (clip_step(st, *clip, x, y, k1, h, nx, ny, cx, cy) && F.contains(cx, cy) && (cx != x || cy != y))
        c.nodes.push_back(node_at(F, cx, cy));
      c.stop = StopReason::LeftRegion;
      return c;
    }
    if (nx == x && ny == y) {
      c.stop = StopReason::Stagnation;
      return c;
    }
    x = nx;
    y = ny;
    c.nodes.push_back(node_at(F, x, y));
  }
  c.stop = StopReason::StepsExhausted;
  return c;
}

double tangency(const Curve& c, const std::function<Vec(const Node&)>& dirf, double min_speed) {
  double worst = 0;
  for (std::size_t i = 1; i < c.nodes.size(); ++i) {
    const Node &a = c.nodes[i - 1], &b = c.nodes[i];
    Vec da = dirf(a), db = dirf(b);
    Vec m{0.5 * (da.x + db.x), 0.5 * (da.y + db.y)};
    double sm = std::hypot(m.x, m.y);
    if (std::hypot(da.x, da.y) < min_speed || std::hypot(db.x, db.y) < min_speed || sm < min_speed) continue;
    double dx = b.x - a.x, dy = b.y - a.y, ds = std::hypot(dx, dy);
    if (ds == 0) continue;
    worst = std::max(worst, std::abs(dx * m.y - dy * m.x) / (ds * sm));
  }
  return worst;
}

}  // namespace

Curve flowline(const pde::FieldMap& F, double x0, double y0, double dt, int n_max, Direction dir,
               const Rect* clip) {
  return integrate(F, [](const pde::State& s) { return Vec{s.u, s.v}; }, x0, y0, dt, n_max, dir, clip);
}

Curve plasticity_boundary(const pde::FieldMap& F, FeedSpec feed, double x0, double y0, double dt, int n_max,
                          Direction dir, const Rect* clip) {
  return integrate(
      F, [feed](const pde::State& s) { return Vec{feed.U0 - s.u, feed.V0 - s.v}; }, x0, y0, dt, n_max, dir,
      clip);
}

Curve slip_line(const pde::FieldMap& F, double x0, double y0, double dt, int n_max, bool orthogonal,
                Direction dir, const Rect* clip) {
  return integrate(
      F,
      [orthogonal](const pde::State& s) {
        double c = std::cos(s.theta), sn = std::sin(s.theta);
        return orthogonal ? Vec{-sn, c} : Vec{c, sn};
      },
      x0, y0, dt, n_max, dir, clip);
}

Curve join(const Curve& backward, const Curve& forward) {
  Curve c;
  c.label = forward.label.empty() ? backward.label : forward.label;
  c.nodes.assign(backward.nodes.rbegin(), backward.nodes.rend());
  if (!c.nodes.empty() && !forward.nodes.empty()) c.nodes.pop_back();
  c.nodes.insert(c.nodes.end(), forward.nodes.begin(), forward.nodes.end());
  c.stop = forward.stop;
  return c;
}

double flow_tangency(const Curve& c, double min_speed) {
  return tangency(c, [](const Node& n) { return Vec{n.u, n.v}; }, min_speed);
}

double boundary_tangency(const Curve& c, FeedSpec feed, double min_speed) {
  return tangency(c, [feed](const Node& n) { return Vec{feed.U0 - n.u, feed.V0 - n.v}; }, min_speed);
}

}  // namespace plastiflow::flow
