#include "hyperfront/curves.hpp"

#include <array>
#include <cmath>

namespace hyperfront {

namespace {

constexpr int kRarefactionSteps = 32;
constexpr int kMaxNewtonIter = 50;
constexpr double kNewtonTol = 1e-14;
constexpr double kNewtonAccept = 1e-12;

double lambda_of(int family, const State& u, const SimilarityParams& p) {
  const auto [l1, l2] = eigenvalues(u, p);
  return family == 1 ? l1 : l2;
}

// Curve entry states may be solver-internal middle states; allow the same
// slack as the trajectory guard.
void check_entry(const State& u, const SimilarityParams& p, const char* who) {
  if (!(u.rho > 0.0))
    throw domain_error(std::string(who) + ": rho <= 0");
  if (sup_norm(u, kBackground) > 3.0 * p.neighborhood_radius)
    throw domain_error(std::string(who) + ": state outside admissible neighborhood");
}

// Curve radius: 2.5x the state radius, enough to decompose any pair of
// admissible states; the solvers reject trajectories drifting past 3x.
void check_strength(double alpha, const SimilarityParams& p, const char* who) {
  if (std::abs(alpha) >= 2.5 * p.neighborhood_radius)
    throw domain_error(std::string(who) + ": |alpha| exceeds the curve radius");
}

}  // namespace

State integrate_eigenvector_ode(int family, double alpha, const State& ul,
                                const SimilarityParams& p) {
  State u = ul;
  const double step = alpha / kRarefactionSteps;
  for (int i = 0; i < kRarefactionSteps; ++i) {
    const Vec2 k1 = eigenvector(family, u, p);
    const State u2{u.rho + 0.5 * step * k1[0], u.v + 0.5 * step * k1[1]};
    const Vec2 k2 = eigenvector(family, u2, p);
    const State u3{u.rho + 0.5 * step * k2[0], u.v + 0.5 * step * k2[1]};
    const Vec2 k3 = eigenvector(family, u3, p);
    const State u4{u.rho + step * k3[0], u.v + step * k3[1]};
    const Vec2 k4 = eigenvector(family, u4, p);
    u.rho += step / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
    u.v += step / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
    if (!(u.rho > 0.0) || sup_norm(u, kBackground) > 3.0 * p.neighborhood_radius)
      throw domain_error("rarefaction: trajectory exits the admissible neighborhood");
  }
  return u;
}

WavePoint rarefaction_point(int family, double alpha, const State& ul,
                            const SimilarityParams& p) {
  if (alpha < 0.0)
    throw std::invalid_argument("rarefaction_point: alpha must be >= 0");
  check_strength(alpha, p, "rarefaction_point");
  check_entry(ul, p, "rarefaction_point");
  if (alpha == 0.0) return {ul, lambda_of(family, ul, p), family, 0.0};
  const State u = integrate_eigenvector_ode(family, alpha, ul, p);
  return {u, lambda_of(family, u, p), family, alpha};
}

double rankine_hugoniot_residual(const State& left, const State& right,
                                 double speed, const SimilarityParams& p) {
  const Vec2 gl = flux_G(left, p), gr = flux_G(right, p);
  const Vec2 fl = flux_F(left, p), fr = flux_F(right, p);
  const double r0 = speed * (gr[0] - gl[0]) - (fr[0] - fl[0]);
  const double r1 = speed * (gr[1] - gl[1]) - (fr[1] - fl[1]);
  return std::max(std::abs(r0), std::abs(r1));
}

WavePoint shock_point(int family, double alpha, const State& ul,
                      const SimilarityParams& p) {
  if (alpha > 0.0)
    throw std::invalid_argument("shock_point: alpha must be <= 0");
  check_strength(alpha, p, "shock_point");
  check_entry(ul, p, "shock_point");
  const double lam_l = lambda_of(family, ul, p);
  if (alpha == 0.0) return {ul, lam_l, family, 0.0};

  const Vec2 gl = flux_G(ul, p);
  const Vec2 fl = flux_F(ul, p);

  // Unknowns x = (rho, v, s). Residual: RH (two components) plus the
  // lambda-increment constraint fixing the parameterization.
  auto residual = [&](const std::array<double, 3>& x) -> std::array<double, 3> {
    const State u{x[0], x[1]};
    const Vec2 g = flux_G(u, p);
    const Vec2 f = flux_F(u, p);
    return {x[2] * (g[0] - gl[0]) - (f[0] - fl[0]),
            x[2] * (g[1] - gl[1]) - (f[1] - fl[1]),
            lambda_of(family, u, p) - lam_l - alpha};
  };

  // Predictor: second-order Taylor step along the curve plus s ~ lambda + alpha/2.
  const Vec2 r = eigenvector(family, ul, p);
  const double fd = 1e-6;
  const State up{ul.rho + fd * r[0], ul.v + fd * r[1]};
  const State um{ul.rho - fd * r[0], ul.v - fd * r[1]};
  const Vec2 rp = eigenvector(family, up, p);
  const Vec2 rm = eigenvector(family, um, p);
  const Vec2 drr{(rp[0] - rm[0]) / (2.0 * fd), (rp[1] - rm[1]) / (2.0 * fd)};
  std::array<double, 3> x{ul.rho + alpha * r[0] + 0.5 * alpha * alpha * drr[0],
                          ul.v + alpha * r[1] + 0.5 * alpha * alpha * drr[1],
                          lam_l + 0.5 * alpha};

  auto norm3 = [](const std::array<double, 3>& v) {
    return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  };

  std::array<double, 3> res = residual(x);
  for (int iter = 0; iter < kMaxNewtonIter && norm3(res) > kNewtonTol; ++iter) {
    // Finite-difference Jacobian, column by column.
    double jac[3][3];
    for (int j = 0; j < 3; ++j) {
      const double h = 1e-8 * std::max(1.0, std::abs(x[j]));
      auto xp = x;
      xp[j] += h;
      const auto rp3 = residual(xp);
      for (int i = 0; i < 3; ++i) jac[i][j] = (rp3[i] - res[i]) / h;
    }
    // Solve jac * dx = -res by Gaussian elimination with partial pivoting.
    std::array<double, 3> rhs{-res[0], -res[1], -res[2]};
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int row = col + 1; row < 3; ++row)
        if (std::abs(jac[perm[row]][col]) > std::abs(jac[perm[piv]][col])) piv = row;
      std::swap(perm[col], perm[piv]);
      const double d = jac[perm[col]][col];
      if (d == 0.0) throw no_convergence_error("shock_point: singular Jacobian");
      for (int row = col + 1; row < 3; ++row) {
        const double f = jac[perm[row]][col] / d;
        for (int k = col; k < 3; ++k) jac[perm[row]][k] -= f * jac[perm[col]][k];
        rhs[perm[row]] -= f * rhs[perm[col]];
      }
    }
    std::array<double, 3> dx{};
    for (int col = 2; col >= 0; --col) {
      double s = rhs[perm[col]];
      for (int k = col + 1; k < 3; ++k) s -= jac[perm[col]][k] * dx[k];
      dx[col] = s / jac[perm[col]][col];
    }
    // Damped update.
    double scale = 1.0;
    for (int att = 0; att < 16; ++att) {
      std::array<double, 3> xn{x[0] + scale * dx[0], x[1] + scale * dx[1],
                               x[2] + scale * dx[2]};
      if (xn[0] > 0.0) {
        try {
          const auto rn = residual(xn);
          if (norm3(rn) < norm3(res) || norm3(rn) <= kNewtonTol) {
            x = xn;
            res = rn;
            break;
          }
        } catch (const domain_error&) {
          // step left the admissible region; shrink
        }
      }
      scale *= 0.5;
      if (att == 15) throw no_convergence_error("shock_point: line search stalled");
    }
  }
  if (norm3(res) > kNewtonAccept)
    throw no_convergence_error("shock_point: Newton did not converge");

  const State u{x[0], x[1]};
  if (sup_norm(u, kBackground) > 3.0 * p.neighborhood_radius)
    throw domain_error("shock_point: state outside admissible neighborhood");
  return {u, x[2], family, alpha};
}

WavePoint wave_curve(int family, double alpha, const State& ul,
                     const SimilarityParams& p) {
  if (alpha < 0.0) return shock_point(family, alpha, ul, p);
  return rarefaction_point(family, alpha, ul, p);
}

}  // namespace hyperfront
