#include "hyperfront/gas.hpp"

#include <cmath>

namespace hyperfront {

namespace {

// v^2 + 2 (rho^(gamma-1) - 1) / ((gamma-1) a^2); the radicand is 1 - tau^2 * this.
double bernoulli_rhs(const State& u, const SimilarityParams& p) {
  return u.v * u.v +
         2.0 * (std::pow(u.rho, p.gamma - 1.0) - 1.0) /
             ((p.gamma - 1.0) * p.a_inf * p.a_inf);
}

}  // namespace

double axial_velocity(const State& u, const SimilarityParams& p) {
  if (!(u.rho > 0.0)) throw domain_error("axial_velocity: rho <= 0");
  const double rhs = bernoulli_rhs(u, p);
  if (p.small_disturbance()) return -0.5 * rhs + 0.0;  // normalize -0
  const double t2 = p.tau * p.tau;
  const double radicand = 1.0 - t2 * rhs;
  if (!(radicand > 0.0))
    throw domain_error("axial_velocity: radicand <= 0, state not hypersonic-admissible");
  // (-1 + sqrt(1 - t2*rhs))/t2, rewritten to avoid cancellation for small tau
  return -rhs / (1.0 + std::sqrt(radicand)) + 0.0;  // normalize -0
}

double sonic_speed(double rho, const SimilarityParams& p) {
  if (!(rho > 0.0)) throw domain_error("sonic_speed: rho <= 0");
  return std::pow(rho, 0.5 * (p.gamma - 1.0));
}

Vec2 flux_G(const State& u, const SimilarityParams& p) {
  if (p.small_disturbance()) return {u.rho, u.v};
  const double ax = axial_velocity(u, p);
  return {u.rho * (1.0 + p.tau * p.tau * ax), u.v};
}

Vec2 flux_F(const State& u, const SimilarityParams& p) {
  return {u.rho * u.v, -axial_velocity(u, p)};
}

double char_poly(double lambda, const State& u, const SimilarityParams& p) {
  const double a2 = p.a_inf * p.a_inf;
  const double c = sonic_speed(u.rho, p);
  const double c2 = c * c;
  if (p.small_disturbance())
    return a2 * lambda * lambda - 2.0 * a2 * u.v * lambda + a2 * u.v * u.v - c2;
  const double t2 = p.tau * p.tau;
  const double m = 1.0 + t2 * axial_velocity(u, p);
  const double A = a2 * m * m - t2 * c2;
  return A * lambda * lambda - 2.0 * a2 * m * u.v * lambda + a2 * u.v * u.v - c2;
}

std::pair<double, double> eigenvalues(const State& u, const SimilarityParams& p) {
  const double c = sonic_speed(u.rho, p);
  if (p.small_disturbance())
    return {u.v - c / p.a_inf, u.v + c / p.a_inf};
  const double a2 = p.a_inf * p.a_inf;
  const double t2 = p.tau * p.tau;
  const double c2 = c * c;
  const double m = 1.0 + t2 * axial_velocity(u, p);
  const double A = a2 * m * m - t2 * c2;
  const double disc = a2 * m * m + t2 * (a2 * u.v * u.v - c2);
  if (!(disc > 0.0) || !(A > 0.0))
    throw domain_error("eigenvalues: hyperbolicity lost");
  const double root = c * std::sqrt(disc);
  const double b = a2 * m * u.v;
  return {(b - root) / A, (b + root) / A};
}

Vec2 grad_lambda(int family, const State& u, const SimilarityParams& p) {
  const double c = sonic_speed(u.rho, p);
  const double sign = (family == 1) ? -1.0 : 1.0;
  if (p.small_disturbance()) {
    // lambda = v + sign * c / a: d/drho = sign * c'(rho)/a, d/dv = 1
    return {sign * 0.5 * (p.gamma - 1.0) * c / (u.rho * p.a_inf), 1.0};
  }
  const double a2 = p.a_inf * p.a_inf;
  const double t2 = p.tau * p.tau;
  const double c2 = c * c;
  const double ax = axial_velocity(u, p);
  const double m = 1.0 + t2 * ax;
  const double lambda = (family == 1) ? eigenvalues(u, p).first
                                      : eigenvalues(u, p).second;
  const double dc2_drho = (p.gamma - 1.0) * c2 / u.rho;
  const double du_drho = -c2 / (u.rho * a2 * m);
  const double du_dv = -u.v / m;
  // P(lambda; rho, v) = A lambda^2 - 2 a^2 m v lambda + a^2 v^2 - c^2
  const double dA_drho = 2.0 * a2 * m * t2 * du_drho - t2 * dc2_drho;
  const double dA_dv = 2.0 * a2 * m * t2 * du_dv;
  const double dP_drho = dA_drho * lambda * lambda -
                         2.0 * a2 * u.v * lambda * t2 * du_drho - dc2_drho;
  const double dP_dv = dA_dv * lambda * lambda -
                       2.0 * a2 * lambda * (m + u.v * t2 * du_dv) + 2.0 * a2 * u.v;
  const double A = a2 * m * m - t2 * c2;
  const double dP_dlambda = 2.0 * (A * lambda - a2 * m * u.v);
  if (dP_dlambda == 0.0) throw domain_error("grad_lambda: degenerate root");
  return {-dP_drho / dP_dlambda, -dP_dv / dP_dlambda};
}

Vec2 eigenvector_raw(int family, const State& u, const SimilarityParams& p) {
  const double c = sonic_speed(u.rho, p);
  const double sign = (family == 1) ? -1.0 : 1.0;
  if (p.small_disturbance()) return {sign * p.a_inf * u.rho, c};
  const double lambda = (family == 1) ? eigenvalues(u, p).first
                                      : eigenvalues(u, p).second;
  const double t2 = p.tau * p.tau;
  return {sign * p.a_inf * u.rho * std::sqrt(1.0 + t2 * lambda * lambda), c};
}

double gnl_quantity(int family, const State& u, const SimilarityParams& p) {
  const Vec2 g = grad_lambda(family, u, p);
  const Vec2 r = eigenvector_raw(family, u, p);
  return g[0] * r[0] + g[1] * r[1];
}

Vec2 eigenvector(int family, const State& u, const SimilarityParams& p) {
  const double gnl = gnl_quantity(family, u, p);
  if (!(gnl > 0.0))
    throw domain_error("eigenvector: genuine nonlinearity lost");
  const Vec2 r = eigenvector_raw(family, u, p);
  return {r[0] / gnl, r[1] / gnl};
}

std::pair<Vec2, Vec2> eigenvectors(const State& u, const SimilarityParams& p) {
  return {eigenvector(1, u, p), eigenvector(2, u, p)};
}

std::pair<double, double> entropy_pair(const State& u, const SimilarityParams& p) {
  if (!p.small_disturbance())
    throw unsupported_regime_error("entropy_pair: no closed form for tau > 0");
  if (!(u.rho > 0.0)) throw domain_error("entropy_pair: rho <= 0");
  // Mechanical energy about the background: E = rho v^2/2 + P(rho) with
  // P'' = rho^(gamma-2)/a^2 and P(1) = P'(1) = 0, flux Q = v (E + p) with
  // p' = rho^(gamma-1)/a^2, p(1) = 0. This is the convex pair compatible
  // with the flux (grad Q = grad E . grad F).
  const double g = p.gamma;
  const double a2 = p.a_inf * p.a_inf;
  const double rg = std::pow(u.rho, g);
  const double pe = (rg - g * u.rho + g - 1.0) / (g * (g - 1.0) * a2);
  const double pressure = (rg - 1.0) / (g * a2);
  const double e = 0.5 * u.rho * u.v * u.v + pe;
  return {e, u.v * (e + pressure)};
}

double bernoulli_residual(const State& u, double axial_u,
                          const SimilarityParams& p) {
  const double t2 = p.tau * p.tau;
  return axial_u + 0.5 * (u.v * u.v + t2 * axial_u * axial_u) +
         (std::pow(u.rho, p.gamma - 1.0) - 1.0) /
             ((p.gamma - 1.0) * p.a_inf * p.a_inf);
}

}  // namespace hyperfront
