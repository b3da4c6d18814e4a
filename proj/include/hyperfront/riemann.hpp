#ifndef HYPERFRONT_RIEMANN_HPP_
#define HYPERFRONT_RIEMANN_HPP_

#include <vector>

#include "hyperfront/curves.hpp"

namespace hyperfront {

/// Family tag for non-physical fronts (physical families are 1 and 2).
inline constexpr int kNonPhysical = 0;

/// A front descriptor, not yet installed in the engine: family (1, 2 or
/// non-physical), signed strength, flanking states and the nominal speed.
struct FrontSpec {
  int family = 1;
  double strength = 0.0;
  State left;   // below
  State right;  // above
  double speed = 0.0;
  bool is_shock = false;
};

/// Solution of the interior Riemann problem: U_R = Phi_2(a2; Phi_1(a1; U_L)).
struct RiemannFan {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  State left, middle, right;
  WavePoint wave1, wave2;
};

/// Solution of the slip-boundary Riemann problem: a single family-1 wave
/// taking U_L to a state satisfying the wall condition at theta_out.
struct BoundaryFan {
  double alpha1 = 0.0;
  State left, wall_state;
  WavePoint wave1;
  double theta_out = 0.0;
};

/// Slip-condition residual at wall angle theta: (1 + tau^2 u, v).n for
/// tau > 0, v - tan(theta) for tau = 0. Zero iff the state satisfies the
/// boundary condition.
double slip_residual(const State& u, double theta, const SimilarityParams& p);

RiemannFan solve_interior(const State& ul, const State& ur,
                          const SimilarityParams& p);

BoundaryFan solve_boundary(const State& ul, double theta_out,
                           const SimilarityParams& p);

/// Accurate solver emission: shocks pass through as single fronts at their
/// Rankine-Hugoniot speed; a rarefaction of strength a is split into
/// ceil(a nu) equal pieces, each a jump along the curve moving at the
/// lambda of its own right state.
std::vector<FrontSpec> ars_fronts(const RiemannFan& fan, int nu,
                                  const SimilarityParams& p);
std::vector<FrontSpec> ars_fronts(const BoundaryFan& fan, int nu,
                                  const SimilarityParams& p);

/// Simplified solver: physical strengths are transmitted (same-family
/// pairs merge into one front of the summed strength); the mismatch
/// between the transmitted chain and the exact upper state travels as one
/// non-physical front at speed lambda_hat.
std::vector<FrontSpec> srs_fronts(const FrontSpec& lower, const FrontSpec& upper,
                                  const SimilarityParams& p, double lambda_hat);

/// 2 * max |lambda_j| over the admissible neighborhood, taken over both
/// the given regime and its tau = 0 counterpart so paired runs share it.
double lambda_hat_bound(const SimilarityParams& p);

}  // namespace hyperfront

#endif  // HYPERFRONT_RIEMANN_HPP_
