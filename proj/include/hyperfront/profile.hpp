#ifndef HYPERFRONT_PROFILE_HPP_
#define HYPERFRONT_PROFILE_HPP_

#include <limits>
#include <vector>

#include "hyperfront/engine.hpp"

namespace hyperfront {

/// Piecewise-constant function of y with background tails: states[i] on
/// (breaks[i-1], breaks[i]), states.front() below everything, states.back()
/// on top. Equal to background below support_floor.
struct Profile {
  std::vector<double> breaks;
  std::vector<State> states;  // breaks.size() + 1
  State background = kBackground;
  double support_floor = -std::numeric_limits<double>::infinity();
};

/// Scalar-valued sibling (the reconstructed axial component).
struct ScalarProfile {
  std::vector<double> breaks;
  std::vector<double> values;  // breaks.size() + 1
  double background = 0.0;
};

/// Solution profile at x. Query x values colliding with an event are
/// nudged by +1e-12.
Profile profile_of(const Trajectory& traj, double x);

/// Exact L1 distance over (-inf, upper] in the componentwise
/// absolute-sum norm, by breakpoint merging. The profiles must share
/// their background.
double l1_distance(const Profile& a, const Profile& b, double upper);

double l1_distance_scalar(const ScalarProfile& a, const ScalarProfile& b,
                          double upper);

/// Axial velocity applied interval by interval; breakpoints unchanged.
ScalarProfile reconstruct_u(const Profile& prof, const SimilarityParams& p);

/// Sum of componentwise jump magnitudes.
double total_variation(const Profile& prof);

/// One-step reference evolutions for the local error diagnostic.
class OneStepEvolution {
 public:
  virtual ~OneStepEvolution() = default;
  virtual Profile evolve(const Profile& at_x, double x, double s) const = 0;
};

/// The trajectory's own evolution (the identity reference).
class TrajectoryStep : public OneStepEvolution {
 public:
  explicit TrajectoryStep(const Trajectory& traj) : traj_(traj) {}
  Profile evolve(const Profile&, double x, double s) const override;

 private:
  const Trajectory& traj_;
};

/// Fresh Riemann re-solve of every jump under the given regime, fronts
/// moving at nominal (unjittered) speeds.
class RiemannStep : public OneStepEvolution {
 public:
  RiemannStep(const SimilarityParams& p, int nu) : params_(p), nu_(nu) {}
  Profile evolve(const Profile& at_x, double x, double s) const override;

 private:
  SimilarityParams params_;
  int nu_;
};

/// (1/s) * L1 distance between the reference one-step evolution of the
/// trajectory's profile at x and the trajectory's own profile at x + s.
/// Requires an event-free window (x, x + s].
double local_step_error(const Trajectory& traj, const OneStepEvolution& ref,
                        double x, double s);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // rms residual in log-log space
};

/// Least-squares line through (log tau, log error).
FitResult fit_rate(const std::vector<std::pair<double, double>>& pairs);

}  // namespace hyperfront

#endif  // HYPERFRONT_PROFILE_HPP_
