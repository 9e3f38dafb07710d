#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "plastiflow/errors.hpp"

namespace plastiflow::cli {

namespace {

using nlohmann::json;

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError(where + " must be an object", 0, "object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ParseError("unknown key '" + k + "' in " + where, 0, "one of the documented keys");
}

double number(const json& j, const std::string& where) {
  if (j.is_boolean()) return j.get<bool>() ? 1 : 0;
  if (!j.is_number()) throw ParseError(where + " must be a number", 0, "number");
  return j.get<double>();
}

int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + " must be an integer", 0, "integer");
  return j.get<int>();
}

solutions::Rect rect(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) throw ParseError(where + " must be [xmin, xmax, ymin, ymax]", 0, "array of 4");
  solutions::Rect r{number(j[0], where), number(j[1], where), number(j[2], where), number(j[3], where)};
  if (!(r.xmin < r.xmax && r.ymin < r.ymax)) throw ParseError(where + " is empty", 0, "xmin < xmax, ymin < ymax");
  return r;
}

die::Point point(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw ParseError(where + " must be [x, y]", 0, "array of 2");
  return {number(j[0], where), number(j[1], where)};
}

std::vector<die::Point> points(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array of [x, y]", 0, "array");
  std::vector<die::Point> r;
  for (const auto& p : j) r.push_back(point(p, where));
  return r;
}

flow::FeedSpec feed(const json& j, const std::string& where) {
  die::Point p = point(j, where);
  return {p.x, p.y};
}

CurveBlock curve_block(const json& j, const std::string& where, bool boundary) {
  if (boundary)
    only_keys(j, where, {"seeds", "feed", "dt", "steps", "direction", "region", "mode"});
  else
    only_keys(j, where, {"seeds", "dt", "steps", "direction", "region"});
  CurveBlock c;
  if (!j.contains("seeds")) throw ParseError(where + ".seeds is required", 0, "seeds");
  c.seeds = points(j["seeds"], where + ".seeds");
  if (j.contains("feed")) c.feed = feed(j["feed"], where + ".feed");
  if (j.contains("dt")) c.dt = number(j["dt"], where + ".dt");
  if (j.contains("steps")) c.steps = integer(j["steps"], where + ".steps");
  if (j.contains("direction")) {
    c.direction = j["direction"].get<std::string>();
    if (c.direction != "forward" && c.direction != "backward" && c.direction != "both")
      throw ParseError(where + ".direction must be forward, backward or both", 0, "direction");
  }
  if (j.contains("region")) c.region = rect(j["region"], where + ".region");
  if (j.contains("mode")) {
    c.mode = j["mode"].get<std::string>();
    if (c.mode != "feed" && c.mode != "slip" && c.mode != "slip_orthogonal")
      throw ParseError(where + ".mode must be feed, slip or slip_orthogonal", 0, "mode");
  } else if (boundary) {
    c.mode = "feed";
  }
  if (boundary && c.mode == "feed" && !j.contains("feed"))
    throw ParseError(where + ".feed is required", 0, "feed");
  return c;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what(), e.byte, "JSON");
  }
  try {
    only_keys(j, "scenario", {"schema_version", "family", "params", "functions", "verify", "sample", "flowline",
                              "boundary", "die"});
    if (!j.contains("schema_version") || integer(j["schema_version"], "schema_version") != 1)
      throw ParseError("schema_version must be 1", 0, "1");
    if (!j.contains("family") || !j["family"].is_string()) throw ParseError("family is required", 0, "string");
    Scenario s;
    s.family = j["family"].get<std::string>();
    if (j.contains("params")) {
      if (!j["params"].is_object()) throw ParseError("params must be an object", 0, "object");
      for (const auto& [k, v] : j["params"].items()) {
        if (v.is_string()) {
          std::string t = v.get<std::string>();
          if (t == "+") s.params.values[k] = 1;
          else if (t == "-") s.params.values[k] = -1;
          else throw ParseError("params." + k + ": string values other than \"+\" or \"-\" are not accepted", 0, "number");
        } else {
          s.params.values[k] = number(v, "params." + k);
        }
      }
    }
    if (j.contains("functions")) {
      if (!j["functions"].is_object()) throw ParseError("functions must be an object", 0, "object");
      for (const auto& [k, v] : j["functions"].items()) {
        if (!v.is_string()) throw ParseError("functions." + k + " must be a string", 0, "string");
        s.params.functions[k] = v.get<std::string>();
      }
    }
    const auto& info = solutions::family_info(s.family);
    if (j.contains("verify")) {
      const json& v = j["verify"];
      only_keys(v, "verify", {"region", "samples", "seed", "tol_analytic", "tol_fd", "tol_compat", "min_abs_x", "h"});
      solutions::VerifyOptions o;
      o.region = v.contains("region") ? rect(v["region"], "verify.region") : info.region;
      if (v.contains("samples")) o.n = integer(v["samples"], "verify.samples");
      if (v.contains("seed")) o.seed = static_cast<std::uint64_t>(integer(v["seed"], "verify.seed"));
      if (v.contains("tol_analytic")) o.tol_analytic = number(v["tol_analytic"], "verify.tol_analytic");
      if (v.contains("tol_fd")) o.tol_fd = number(v["tol_fd"], "verify.tol_fd");
      if (v.contains("tol_compat")) o.tol_compat = number(v["tol_compat"], "verify.tol_compat");
      if (v.contains("min_abs_x")) o.min_abs_x = number(v["min_abs_x"], "verify.min_abs_x");
      if (v.contains("h")) o.fd_h = number(v["h"], "verify.h");
      s.verify = o;
    }
    if (j.contains("sample")) {
      only_keys(j["sample"], "sample", {"x", "y"});
      s.sample = die::Point{number(j["sample"].value("x", json(0.0)), "sample.x"),
                            number(j["sample"].value("y", json(0.0)), "sample.y")};
    }
    if (j.contains("flowline")) s.flowline = curve_block(j["flowline"], "flowline", false);
    if (j.contains("boundary")) s.boundary = curve_block(j["boundary"], "boundary", true);
    if (j.contains("die")) {
      const json& d = j["die"];
      only_keys(d, "die", {"region", "raster", "dt", "steps", "walls", "limits"});
      die::DieScenario ds;
      ds.family = s.family;
      ds.params = s.params;
      if (!d.contains("region")) throw ParseError("die.region is required", 0, "region");
      ds.region = rect(d["region"], "die.region");
      if (d.contains("raster")) {
        const json& r = d["raster"];
        if (!r.is_array() || r.size() != 2) throw ParseError("die.raster must be [nx, ny]", 0, "array of 2");
        ds.nx = integer(r[0], "die.raster");
        ds.ny = integer(r[1], "die.raster");
        if (ds.nx < 1 || ds.ny < 1) throw ParseError("die.raster must be positive", 0, "positive");
      }
      if (d.contains("dt")) ds.dt = number(d["dt"], "die.dt");
      if (d.contains("steps")) ds.n_max = integer(d["steps"], "die.steps");
      if (d.contains("walls")) ds.wall_seeds = points(d["walls"], "die.walls");
      if (d.contains("limits")) {
        if (!d["limits"].is_array()) throw ParseError("die.limits must be an array", 0, "array");
        for (const auto& l : d["limits"]) {
          only_keys(l, "die.limits[]", {"label", "feed", "seeds"});
          die::LimitSpec ls;
          ls.label = l.value("label", std::string("C") + std::to_string(ds.limits.size() + 1));
          if (!l.contains("feed")) throw ParseError("die.limits[].feed is required", 0, "feed");
          ls.feed = feed(l["feed"], "die.limits[].feed");
          if (l.contains("seeds")) ls.seeds = points(l["seeds"], "die.limits[].seeds");
          ds.limits.push_back(ls);
        }
      }
      s.die = ds;
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario has a value of the wrong type: ") + e.what(), 0, "documented schema");
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot read scenario " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_scenario(ss.str());
}

}  // namespace plastiflow::cli
