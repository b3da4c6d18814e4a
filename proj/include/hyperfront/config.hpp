#ifndef HYPERFRONT_CONFIG_HPP_
#define HYPERFRONT_CONFIG_HPP_

#include <optional>
#include <string>
#include <vector>

#include "hyperfront/engine.hpp"
#include "hyperfront/geometry.hpp"

namespace hyperfront {

struct WingSpec {
  // Either a parametric lens or explicit surface specs.
  bool is_lens = true;
  double chord = 1.0;
  double thickness = 0.05;
  int segments = 10;
  std::optional<BoundarySpec> upper, lower;

  WingGeometry build() const;
};

/// A validated run configuration (one regime, one geometry, one data set).
struct RunConfig {
  int schema_version = 1;
  SimilarityParams params;
  std::string regime = "small_disturbance";  // or "scaled"
  std::optional<BoundarySpec> boundary;      // absent => Cauchy mode
  InitialData initial;
  double h = 0.05;
  int nu = 12;
  double x_end = 1.0;
  std::uint64_t seed = 0;
  std::vector<double> query_xs;
  double budget_epsilon = 0.5;

  // sweep extras
  std::vector<double> sweep_taus;
  std::vector<std::pair<double, double>> synthetic_pairs;

  // wing extras
  std::optional<WingSpec> wing;
  std::vector<double> wing_taus;
  double horizon_c = 0.5;

  void validate() const;
};

RunConfig load_config_file(const std::string& path);
RunConfig load_config_string(const std::string& text);

/// Engine-level config for this run (wall built at mesh h, data sampled).
EngineConfig make_engine_config(const RunConfig& rc);

/// Same run with tau replaced (0 selects the small-disturbance regime).
RunConfig with_tau(const RunConfig& rc, double tau);

}  // namespace hyperfront

#endif  // HYPERFRONT_CONFIG_HPP_
