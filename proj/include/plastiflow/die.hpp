#pragma once

#include <string>
#include <vector>

#include "plastiflow/flow.hpp"
#include "plastiflow/solutions.hpp"

namespace plastiflow::die {

using solutions::Rect;

struct Point {
  double x, y;
};

// One family of plasticity limits: a feed velocity and the seeds it starts from.
struct LimitSpec {
  std::string label;
  flow::FeedSpec feed;
  std::vector<Point> seeds;
};

struct DieScenario {
  std::string family;
  solutions::ParamSet params;
  std::vector<Point> wall_seeds;
  std::vector<LimitSpec> limits;
  Rect region;
  int nx = 80, ny = 80;
  double dt = 1e-3;
  int n_max = 20000;
};

struct Raster {
  Rect region;
  int nx = 0, ny = 0;
  std::vector<double> sigma;    // row-major, j * nx + i; NaN outside the domain
  std::vector<char> in_domain;  // domain predicate at the cell center
  double cx(int i) const { return region.xmin + (i + 0.5) * (region.xmax - region.xmin) / nx; }
  double cy(int j) const { return region.ymin + (j + 0.5) * (region.ymax - region.ymin) / ny; }
  int cells_in_domain() const;
};

struct DieGeometry {
  std::vector<flow::Curve> walls;
  std::vector<flow::Curve> limits;
  std::vector<flow::FeedSpec> limit_feeds;  // parallel to limits
  Raster pressure;
  Rect bounds;
};

DieGeometry build_die(const pde::FieldMap& F, const DieScenario& s);
DieGeometry build_die(const DieScenario& s);

// Grey lightness in percent for a pressure value: min -> 90, max -> 20.
double lightness(double sigma, double lo, double hi);

std::string svg(const DieGeometry& g);
std::string walls_csv(const DieGeometry& g);
std::string limits_csv(const DieGeometry& g);
std::string raster_csv(const DieGeometry& g);

void export_svg(const DieGeometry& g, const std::string& path);
// Writes walls.csv, limits.csv and raster.csv into dir.
void export_csv(const DieGeometry& g, const std::string& dir);

// Shortest round-trip decimal.
std::string num(double v);

struct PropertyReport {
  double wall_tangency = 0, limit_tangency = 0;
  bool mask_matches_domain = true;
  bool shading_monotone = true;
  bool raster_nonempty = true;
  double tol = 1e-4;
  bool pass = false;
  std::vector<std::string> lines;
};

PropertyReport check_properties(const pde::FieldMap& F, const DieGeometry& g, double tol = 1e-4);

}  // namespace plastiflow::die
