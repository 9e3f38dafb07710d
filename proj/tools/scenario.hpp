#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plastiflow/die.hpp"
#include "plastiflow/flow.hpp"
#include "plastiflow/solutions.hpp"

namespace plastiflow::cli {

struct CurveBlock {
  std::vector<die::Point> seeds;
  flow::FeedSpec feed;  // boundary only
  double dt = 1e-3;
  int steps = 10000;
  std::string direction = "both";  // forward, backward, both
  std::optional<solutions::Rect> region;
  std::string mode = "flow";  // boundary block: feed, slip, slip_orthogonal
};

struct Scenario {
  std::string family;
  solutions::ParamSet params;
  std::optional<solutions::VerifyOptions> verify;
  std::optional<die::Point> sample;
  std::optional<CurveBlock> flowline;
  std::optional<CurveBlock> boundary;
  std::optional<die::DieScenario> die;
};

// Schema version 1; unknown keys anywhere raise ParseError.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::string& path);

}  // namespace plastiflow::cli
