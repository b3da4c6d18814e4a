#include "hyperfront/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

namespace hyperfront {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed,
                  const std::set<std::string>& required) {
  if (!obj.is_object()) throw config_error(where + ": expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key))
      throw config_error(where + ": unknown key '" + key + "'");
  for (const auto& key : required)
    if (!obj.contains(key))
      throw config_error(where + ": missing key '" + key + "'");
}

double num(const json& j, const std::string& where) {
  if (!j.is_number()) throw config_error(where + ": expected a number");
  return j.get<double>();
}

std::vector<double> num_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw config_error(where + ": expected an array");
  std::vector<double> v;
  for (const auto& e : j) v.push_back(num(e, where));
  return v;
}

BoundarySpec parse_boundary(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw config_error(where + ": expected an object with a kind");
  BoundarySpec spec;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "piecewise_linear") {
    require_keys(j, where, {"kind", "breakpoints", "slopes", "far_slope"},
                 {"kind", "breakpoints", "slopes"});
    spec.kind = BoundarySpec::Kind::piecewise_linear;
    spec.breakpoints = num_list(j.at("breakpoints"), where + ".breakpoints");
    spec.slopes = num_list(j.at("slopes"), where + ".slopes");
  } else if (kind == "samples") {
    require_keys(j, where, {"kind", "x", "y", "far_slope"}, {"kind", "x", "y"});
    spec.kind = BoundarySpec::Kind::samples;
    spec.xs = num_list(j.at("x"), where + ".x");
    spec.ys = num_list(j.at("y"), where + ".y");
  } else {
    throw config_error(where + ": kind must be piecewise_linear or samples");
  }
  if (j.contains("far_slope")) spec.far_slope = num(j.at("far_slope"), where);
  return spec;
}

InitialData parse_initial(const json& j) {
  require_keys(j, "initial_data",
               {"kind", "positions", "states", "center", "width", "amp_rho", "amp_v"},
               {"kind"});
  InitialData d;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") {
    d.kind = InitialData::Kind::constant;
  } else if (kind == "jumps") {
    d.kind = InitialData::Kind::jumps;
    d.positions = num_list(j.at("positions"), "initial_data.positions");
    if (!j.at("states").is_array())
      throw config_error("initial_data.states: expected an array");
    for (const auto& e : j.at("states")) {
      const auto pair = num_list(e, "initial_data.states[]");
      if (pair.size() != 2)
        throw config_error("initial_data.states[]: expected [rho, v]");
      d.states.push_back({pair[0], pair[1]});
    }
  } else if (kind == "bump") {
    d.kind = InitialData::Kind::bump;
    d.center = num(j.at("center"), "initial_data.center");
    d.width = num(j.at("width"), "initial_data.width");
    d.amp_rho = j.contains("amp_rho") ? num(j.at("amp_rho"), "amp_rho") : 0.0;
    d.amp_v = j.contains("amp_v") ? num(j.at("amp_v"), "amp_v") : 0.0;
    if (!(d.width > 0.0)) throw config_error("initial_data.width must be > 0");
  } else {
    throw config_error("initial_data.kind must be constant, jumps or bump");
  }
  return d;
}

WingSpec parse_wing(const json& j) {
  require_keys(j, "wing",
               {"kind", "chord", "thickness", "segments", "upper", "lower"},
               {"kind"});
  WingSpec w;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "parabolic_lens") {
    w.is_lens = true;
    if (j.contains("chord")) w.chord = num(j.at("chord"), "wing.chord");
    if (j.contains("thickness")) w.thickness = num(j.at("thickness"), "wing.thickness");
    if (j.contains("segments")) w.segments = j.at("segments").get<int>();
  } else if (kind == "surfaces") {
    w.is_lens = false;
    if (!j.contains("upper") || !j.contains("lower") || !j.contains("chord"))
      throw config_error("wing: surfaces need upper, lower and chord");
    w.upper = parse_boundary(j.at("upper"), "wing.upper");
    w.lower = parse_boundary(j.at("lower"), "wing.lower");
    w.chord = num(j.at("chord"), "wing.chord");
  } else {
    throw config_error("wing.kind must be parabolic_lens or surfaces");
  }
  return w;
}

}  // namespace

WingGeometry WingSpec::build() const {
  if (is_lens) return make_parabolic_lens(chord, thickness, segments);
  WingGeometry w;
  w.upper = *upper;
  w.lower = *lower;
  w.chord = chord;
  return w;
}

RunConfig load_config_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw config_error(std::string("config: invalid JSON: ") + e.what());
  }
  require_keys(j, "config",
               {"schema_version", "params", "regime", "geometry", "initial_data",
                "h", "nu", "x_end", "seed", "query_xs", "neighborhood_radius",
                "budget_epsilon", "sweep_taus", "synthetic_pairs", "wing",
                "wing_taus", "horizon_c"},
               {"schema_version", "params", "regime", "initial_data", "h", "nu",
                "x_end"});
  RunConfig rc;
  rc.schema_version = j.at("schema_version").get<int>();
  if (rc.schema_version != 1)
    throw config_error("config: unsupported schema_version");

  const json& pj = j.at("params");
  require_keys(pj, "params", {"gamma", "a_inf", "tau"}, {"gamma", "a_inf", "tau"});
  rc.params.gamma = num(pj.at("gamma"), "params.gamma");
  rc.params.a_inf = num(pj.at("a_inf"), "params.a_inf");
  rc.params.tau = num(pj.at("tau"), "params.tau");
  if (j.contains("neighborhood_radius"))
    rc.params.neighborhood_radius = num(j.at("neighborhood_radius"), "neighborhood_radius");

  rc.regime = j.at("regime").get<std::string>();
  if (j.contains("geometry")) {
    const json& gj = j.at("geometry");
    if (gj.is_string()) {
      if (gj.get<std::string>() != "cauchy")
        throw config_error("geometry: string form must be \"cauchy\"");
    } else {
      rc.boundary = parse_boundary(gj, "geometry");
    }
  }
  rc.initial = parse_initial(j.at("initial_data"));
  rc.h = num(j.at("h"), "h");
  rc.nu = j.at("nu").get<int>();
  rc.x_end = num(j.at("x_end"), "x_end");
  if (j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("query_xs")) rc.query_xs = num_list(j.at("query_xs"), "query_xs");
  if (j.contains("budget_epsilon"))
    rc.budget_epsilon = num(j.at("budget_epsilon"), "budget_epsilon");
  if (j.contains("sweep_taus")) rc.sweep_taus = num_list(j.at("sweep_taus"), "sweep_taus");
  if (j.contains("synthetic_pairs")) {
    for (const auto& e : j.at("synthetic_pairs")) {
      const auto pair = num_list(e, "synthetic_pairs[]");
      if (pair.size() != 2) throw config_error("synthetic_pairs[]: expected [tau, error]");
      rc.synthetic_pairs.emplace_back(pair[0], pair[1]);
    }
  }
  if (j.contains("wing")) rc.wing = parse_wing(j.at("wing"));
  if (j.contains("wing_taus")) rc.wing_taus = num_list(j.at("wing_taus"), "wing_taus");
  if (j.contains("horizon_c")) rc.horizon_c = num(j.at("horizon_c"), "horizon_c");

  rc.validate();
  return rc;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("config: cannot open " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return load_config_string(text);
}

void RunConfig::validate() const {
  try {
    params.validate();
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  if (regime == "scaled") {
    if (!(params.tau > 0.0)) throw config_error("config: scaled regime needs tau > 0");
  } else if (regime == "small_disturbance") {
    if (params.tau != 0.0)
      throw config_error("config: small_disturbance regime needs tau = 0");
  } else {
    throw config_error("config: regime must be scaled or small_disturbance");
  }
  if (!(h > 0.0)) throw config_error("config: h must be > 0");
  if (nu < 4) throw config_error("config: nu must be >= 4");
  if (!(x_end > 0.0)) throw config_error("config: x_end must be > 0");
  for (double x : query_xs)
    if (!(x >= 0.0) || !(x <= x_end))
      throw config_error("config: query_xs must lie in [0, x_end]");

  // Smallness hypothesis (initial TV plus wall-slope budget).
  double budget = initial.total_variation();
  if (boundary) {
    boundary->validate_wedge();
    const BoundaryPolyline poly = build_polyline(*boundary, h);
    auto slope_at = [&](int k) {
      return k < poly.k_star ? std::tan(poly.theta[k]) : poly.far_slope;
    };
    budget += std::abs(slope_at(0));
    for (int k = 1; k <= poly.k_star; ++k)
      budget += std::abs(slope_at(k) - slope_at(k - 1));
  }
  if (wing) {
    const WingGeometry geom = wing->build();
    geom.validate();
    // Each surface carries its own half-problem budget at the run mesh.
    const HalfProblems hp = wing_to_half_problems(geom);
    for (const BoundarySpec* s : {&hp.lower, &hp.upper_mirrored}) {
      const BoundaryPolyline poly = build_polyline(*s, h);
      auto slope_at = [&](int k) {
        return k < poly.k_star ? std::tan(poly.theta[k]) : poly.far_slope;
      };
      double tv = std::abs(slope_at(0));
      for (int k = 1; k <= poly.k_star; ++k)
        tv += std::abs(slope_at(k) - slope_at(k - 1));
      budget = std::max(budget, initial.total_variation() + tv);
    }
  }
  if (budget >= budget_epsilon)
    throw config_error("config: smallness budget exceeded (initial variation plus wall turning)");
}

EngineConfig make_engine_config(const RunConfig& rc) {
  EngineConfig ec;
  ec.params = rc.params;
  if (rc.boundary) {
    ec.mode = GeometryMode::ibvp;
    ec.wall = build_polyline(*rc.boundary, rc.h);
  } else {
    ec.mode = GeometryMode::cauchy;
  }
  ec.initial = sample_initial_data(rc.initial, rc.nu);
  ec.nu = rc.nu;
  ec.x_end = rc.x_end;
  ec.seed = rc.seed;
  ec.budget_epsilon = rc.budget_epsilon;
  return ec;
}

RunConfig with_tau(const RunConfig& rc, double tau) {
  RunConfig out = rc;
  out.params.tau = tau;
  out.regime = tau == 0.0 ? "small_disturbance" : "scaled";
  return out;
}

}  // namespace hyperfront
