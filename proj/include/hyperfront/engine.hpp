#ifndef HYPERFRONT_ENGINE_HPP_
#define HYPERFRONT_ENGINE_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hyperfront/geometry.hpp"
#include "hyperfront/riemann.hpp"

namespace hyperfront {

/// A tracked discontinuity. Physical fronts carry a jittered speed within
/// 2^-nu of the nominal one; non-physical fronts travel at exactly
/// lambda_hat. order counts the interactions needed to produce the front;
/// physical orders stay <= nu, non-physical fronts have order nu + 1.
struct Front {
  std::int64_t id = -1;
  int family = 1;  // 1, 2, or kNonPhysical
  double strength = 0.0;
  State left, right;          // below / above
  double speed = 0.0;         // jittered
  double nominal_speed = 0.0;
  int order = 1;
  bool is_shock = false;
  double x_born = 0.0, y_born = 0.0;
  double x_death = std::numeric_limits<double>::infinity();

  double y_at(double x) const { return y_born + speed * (x - x_born); }
  bool physical() const { return family != kNonPhysical; }
  bool alive_at(double x) const { return x_born <= x && x < x_death; }
};

enum class EventKind { interaction, boundary_hit, corner };

struct EventRecord {
  double x = 0.0;
  double y = 0.0;
  EventKind kind = EventKind::interaction;
  bool used_srs = false;
  std::vector<std::int64_t> in_ids;
  std::vector<double> in_strengths;
  std::vector<std::int64_t> out_ids;
  std::vector<double> out_strengths;
  double glimm_before = 0.0;
  double glimm_after = 0.0;
};

/// Weighted wave totals: total = V1 + Kb V2 + Kc Vc + K Q.
struct GlimmSnapshot {
  double v1 = 0.0, v2 = 0.0, vc = 0.0, q = 0.0;
  double total = 0.0;
};

struct GlimmWeights {
  double k = 4.0;    // interaction-potential weight
  double k_b = 1.25; // family-2 weight, above the reflection coefficient
  double k_c = 1.45; // corner weight, above d(alpha)/d(omega)
};

/// Weights calibrated at run start from the measured reflection and corner
/// coefficients at the background state, plus a 0.25 margin.
GlimmWeights calibrate_weights(const SimilarityParams& p);

enum class GeometryMode { ibvp, cauchy };

struct InitialData {
  enum class Kind { constant, jumps, bump } kind = Kind::constant;
  // jumps: states.size() == positions.size() + 1, bottom state first.
  std::vector<double> positions;
  std::vector<State> states;
  // bump: raised-cosine perturbation of (rho, v) on [center - w/2, center + w/2].
  double center = -1.0;
  double width = 0.5;
  double amp_rho = 0.0;
  double amp_v = 0.0;

  double total_variation() const;
};

/// Piecewise-constant sampling with L1 error < 2^-nu and no TV increase.
/// Already piecewise-constant data is passed through unchanged.
struct SampledData {
  std::vector<double> positions;
  std::vector<State> states;
};
SampledData sample_initial_data(const InitialData& data, int nu);

struct EngineConfig {
  SimilarityParams params;
  GeometryMode mode = GeometryMode::cauchy;
  std::optional<BoundaryPolyline> wall;  // required in ibvp mode
  SampledData initial;
  int nu = 12;
  double x_end = 1.0;
  std::uint64_t seed = 0;
  double budget_epsilon = 0.5;
  std::size_t max_fronts = 500000;
  std::size_t max_events = 2000000;
};

/// Completed run: every front ever created (with birth/death), the ordered
/// event log, and enough context to reconstruct the solution at any x.
class Trajectory {
 public:
  const std::vector<Front>& fronts() const { return fronts_; }
  const std::vector<EventRecord>& events() const { return events_; }
  const EngineConfig& config() const { return config_; }
  double lambda_hat() const { return lambda_hat_; }
  const GlimmWeights& weights() const { return weights_; }
  double glimm_initial_total() const { return glimm_initial_; }

  /// Fronts alive at x, ordered bottom to top.
  std::vector<const Front*> alive_at(double x) const;

  /// Solution state at the point (x, y); y above the wall returns the wall
  /// state (the solution is only defined below it).
  State state_at(double x, double y) const;

  /// Wall position b_h(x); infinity in Cauchy mode.
  double wall_at(double x) const;
  /// Wall segment angle at x (ibvp only).
  double wall_angle_at(double x) const;

  /// Bottom (y -> -inf) state; equals the background for admissible data.
  const State& bottom_state() const { return bottom_; }

  /// Numerical support cutoff: below it the solution is provably the
  /// bottom state.
  double support_floor(double x) const;

  bool has_event_at(double x) const;

  GlimmSnapshot glimm_at(double x) const;

  double max_rarefaction_strength() const;
  double total_np_strength(double x) const;
  double max_total_np_strength() const;

 private:
  friend class EngineImpl;
  EngineConfig config_;
  std::vector<Front> fronts_;
  std::vector<EventRecord> events_;
  std::vector<std::pair<double, double>> corners_;
  GlimmWeights weights_;
  double lambda_hat_ = 0.0;
  double glimm_initial_ = 0.0;
  double max_np_running_ = 0.0;
  State bottom_;
  double init_lo_ = 0.0, init_hi_ = 0.0;  // initial support bounds
};

Trajectory run(const EngineConfig& cfg);

/// Glimm snapshot of an explicit front set (used by the engine and by
/// post-hoc queries).
GlimmSnapshot glimm_of(const std::vector<const Front*>& ordered_fronts,
                       double vc_remaining, const GlimmWeights& w);

}  // namespace hyperfront

#endif  // HYPERFRONT_ENGINE_HPP_
