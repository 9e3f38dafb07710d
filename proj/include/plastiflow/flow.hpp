#pragma once

#include <string>
#include <vector>

#include "plastiflow/pde.hpp"
#include "plastiflow/solutions.hpp"

namespace plastiflow::flow {

using solutions::Rect;

enum class StopReason { StepsExhausted, LeftDomain, LeftRegion, Stagnation };
std::string to_string(StopReason r);

enum class Direction { Forward, Backward };

struct Node {
  double x, y, u, v, sigma;
};

struct Curve {
  std::string label;
  std::vector<Node> nodes;
  StopReason stop = StopReason::StepsExhausted;
};

struct FeedSpec {
  double U0 = 1, V0 = 0;
};

// Stagnation threshold on the integrated speed.
inline constexpr double kStagnation = 1e-9;

// RK4 on dx/dt = u, dy/dt = v. With a clip rectangle the step that crosses
// the rectangle is shortened so that the last node lies on its edge.
Curve flowline(const pde::FieldMap& F, double x0, double y0, double dt, int n_max,
               Direction dir = Direction::Forward, const Rect* clip = nullptr);

// RK4 on dx/dt = U0 - u, dy/dt = V0 - v, the parametric form of
// dy/dx = (V0 - v)/(U0 - u).
Curve plasticity_boundary(const pde::FieldMap& F, FeedSpec feed, double x0, double y0, double dt,
                          int n_max, Direction dir = Direction::Forward, const Rect* clip = nullptr);

// RK4 on dx/dt = cos theta, dy/dt = sin theta, or the orthogonal family
// dx/dt = -sin theta, dy/dt = cos theta.
Curve slip_line(const pde::FieldMap& F, double x0, double y0, double dt, int n_max, bool orthogonal = false,
                Direction dir = Direction::Forward, const Rect* clip = nullptr);

// Backward curve reversed, then the forward curve without its repeated seed.
Curve join(const Curve& backward, const Curve& forward);

// Largest |sin| of the angle between each step chord and the mean of the
// field direction at its two ends; steps where the field speed is below
// min_speed are skipped.
double flow_tangency(const Curve& c, double min_speed = 1e-6);
double boundary_tangency(const Curve& c, FeedSpec feed, double min_speed = 1e-6);

}  // namespace plastiflow::flow
