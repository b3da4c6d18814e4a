#ifndef HYPERFRONT_GAS_HPP_
#define HYPERFRONT_GAS_HPP_

#include <array>
#include <utility>

#include "hyperfront/types.hpp"

namespace hyperfront {

using Vec2 = std::array<double, 2>;

/// Axial velocity perturbation u(rho, v). For tau > 0 this is the root of
/// the Bernoulli relation with 1 + tau^2 u > 0; for tau = 0 it is the
/// small-disturbance closure.
double axial_velocity(const State& u, const SimilarityParams& p);

/// c = rho^((gamma-1)/2)
double sonic_speed(double rho, const SimilarityParams& p);

/// Conserved quantity G(U, tau^2) = (rho (1 + tau^2 u), v); G(U, 0) = U.
Vec2 flux_G(const State& u, const SimilarityParams& p);

/// Flux F(U, tau^2) = (rho v, -u) in both regimes.
Vec2 flux_F(const State& u, const SimilarityParams& p);

/// Characteristic speeds lambda_1 < lambda_2 (dy/dx).
std::pair<double, double> eigenvalues(const State& u, const SimilarityParams& p);

/// Gradient of lambda_j with respect to (rho, v), by implicit
/// differentiation of the characteristic polynomial (exact in both
/// regimes).
Vec2 grad_lambda(int family, const State& u, const SimilarityParams& p);

/// Un-normalized right eigenvector of family j:
///   ((-1)^j a_inf rho sqrt(1 + tau^2 lambda_j^2), c).
Vec2 eigenvector_raw(int family, const State& u, const SimilarityParams& p);

/// Genuine-nonlinearity quantity grad(lambda_j) . r~_j. Positive on the
/// admissible neighborhood; its reciprocal is the normalization factor e_j.
double gnl_quantity(int family, const State& u, const SimilarityParams& p);

/// Normalized right eigenvector r_j with grad(lambda_j) . r_j = 1.
Vec2 eigenvector(int family, const State& u, const SimilarityParams& p);

std::pair<Vec2, Vec2> eigenvectors(const State& u, const SimilarityParams& p);

/// Convex entropy pair (E, Q) of the small-disturbance system, normalized
/// to vanish with zero gradient at the background. Only the tau = 0 regime
/// has a closed form; tau > 0 raises unsupported_regime_error.
std::pair<double, double> entropy_pair(const State& u, const SimilarityParams& p);

/// Residual of the Bernoulli relation u + (v^2 + tau^2 u^2)/2 + ... = 0
/// for a given u; zero (to rounding) when u = axial_velocity(U).
double bernoulli_residual(const State& u, double axial_u,
                          const SimilarityParams& p);

/// Characteristic-polynomial value at lambda; a root test for eigenvalues.
double char_poly(double lambda, const State& u, const SimilarityParams& p);

}  // namespace hyperfront

#endif  // HYPERFRONT_GAS_HPP_
