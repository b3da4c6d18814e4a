#ifndef HYPERFRONT_CURVES_HPP_
#define HYPERFRONT_CURVES_HPP_

#include "hyperfront/gas.hpp"
#include "hyperfront/types.hpp"

namespace hyperfront {

/// A point on an elementary wave curve: the right state Phi_k(alpha; U_L),
/// the front speed dy/dx, the family and the signed strength.
/// strength < 0 is the shock branch, strength > 0 the rarefaction branch.
struct WavePoint {
  State state;
  double speed = 0.0;
  int family = 1;
  double strength = 0.0;
};

/// Rarefaction branch: integrates dU/dalpha = r_k(U) from U_L. With the
/// grad(lambda).r = 1 normalization, lambda_k(state) = lambda_k(U_L) + alpha
/// up to integrator tolerance. speed is lambda_k of the right state.
WavePoint rarefaction_point(int family, double alpha, const State& ul,
                            const SimilarityParams& p);

/// Shock branch: the Hugoniot point with lambda_k(state) = lambda_k(U_L) +
/// alpha, together with the Rankine-Hugoniot speed s [G] = [F]. This
/// parameterization matches the rarefaction branch to second order at
/// alpha = 0.
WavePoint shock_point(int family, double alpha, const State& ul,
                      const SimilarityParams& p);

/// Glued curve: shock branch for alpha < 0, rarefaction for alpha >= 0.
WavePoint wave_curve(int family, double alpha, const State& ul,
                     const SimilarityParams& p);

/// Integral curve of r_k without the sign restriction; used to extend the
/// rarefaction branch past alpha = 0 in curve-matching checks.
State integrate_eigenvector_ode(int family, double alpha, const State& ul,
                                const SimilarityParams& p);

/// max |s [G] - [F]| componentwise for a candidate jump.
double rankine_hugoniot_residual(const State& left, const State& right,
                                 double speed, const SimilarityParams& p);

}  // namespace hyperfront

#endif  // HYPERFRONT_CURVES_HPP_
