#include "hyperfront/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfront {

namespace {

constexpr int kMaxIter = 50;
constexpr double kTol = 1e-14;
constexpr double kAccept = 1e-12;
constexpr double kZeroStrength = 1e-14;

State curve_state(int family, double alpha, const State& ul,
                  const SimilarityParams& p) {
  return wave_curve(family, alpha, ul, p).state;
}

}  // namespace

double slip_residual(const State& u, double theta, const SimilarityParams& p) {
  if (p.small_disturbance()) return u.v - std::tan(theta);
  const double ax = axial_velocity(u, p);
  return (1.0 + p.tau * p.tau * ax) * std::sin(theta) - u.v * std::cos(theta);
}

RiemannFan solve_interior(const State& ul, const State& ur,
                          const SimilarityParams& p) {
  require_admissible(ul, p, "solve_interior");
  require_admissible(ur, p, "solve_interior");

  // First-order guess: expand U_R - U_L in the eigenbasis at U_L.
  const Vec2 r1 = eigenvector(1, ul, p);
  const Vec2 r2 = eigenvector(2, ul, p);
  const double det = r1[0] * r2[1] - r1[1] * r2[0];
  if (det == 0.0) throw no_convergence_error("solve_interior: singular eigenbasis");
  const double d0 = ur.rho - ul.rho, d1 = ur.v - ul.v;
  double a1 = (d0 * r2[1] - d1 * r2[0]) / det;
  double a2 = (d1 * r1[0] - d0 * r1[1]) / det;

  auto residual = [&](double x1, double x2) -> Vec2 {
    const State mid = curve_state(1, x1, ul, p);
    const State top = curve_state(2, x2, mid, p);
    return {top.rho - ur.rho, top.v - ur.v};
  };
  auto norm2 = [](const Vec2& v) { return std::max(std::abs(v[0]), std::abs(v[1])); };

  Vec2 res;
  try {
    res = residual(a1, a2);
  } catch (const domain_error&) {
    throw no_convergence_error("solve_interior: states too far apart");
  }
  for (int iter = 0; iter < kMaxIter && norm2(res) > kTol; ++iter) {
    const double h1 = 1e-8 * std::max(1.0, std::abs(a1));
    const double h2 = 1e-8 * std::max(1.0, std::abs(a2));
    Vec2 rp1, rp2;
    try {
      rp1 = residual(a1 + h1, a2);
      rp2 = residual(a1, a2 + h2);
    } catch (const domain_error&) {
      throw no_convergence_error("solve_interior: probe left the neighborhood");
    }
    const double j00 = (rp1[0] - res[0]) / h1, j01 = (rp2[0] - res[0]) / h2;
    const double j10 = (rp1[1] - res[1]) / h1, j11 = (rp2[1] - res[1]) / h2;
    const double jd = j00 * j11 - j01 * j10;
    if (jd == 0.0) throw no_convergence_error("solve_interior: singular Jacobian");
    const double dx1 = (-res[0] * j11 + res[1] * j01) / jd;
    const double dx2 = (-res[1] * j00 + res[0] * j10) / jd;
    double scale = 1.0;
    bool stepped = false;
    for (int att = 0; att < 16; ++att) {
      try {
        const Vec2 rn = residual(a1 + scale * dx1, a2 + scale * dx2);
        if (norm2(rn) < norm2(res) || norm2(rn) <= kTol) {
          a1 += scale * dx1;
          a2 += scale * dx2;
          res = rn;
          stepped = true;
          break;
        }
      } catch (const domain_error&) {
      }
      scale *= 0.5;
    }
    if (!stepped) break;
  }
  if (norm2(res) > kAccept)
    throw no_convergence_error("solve_interior: Newton did not converge");

  RiemannFan fan;
  fan.alpha1 = a1;
  fan.alpha2 = a2;
  fan.left = ul;
  fan.right = ur;
  fan.wave1 = wave_curve(1, a1, ul, p);
  fan.middle = fan.wave1.state;
  fan.wave2 = wave_curve(2, a2, fan.middle, p);
  return fan;
}

BoundaryFan solve_boundary(const State& ul, double theta_out,
                           const SimilarityParams& p) {
  require_admissible(ul, p, "solve_boundary");
  if (std::abs(theta_out) > 0.5)
    throw domain_error("solve_boundary: wall angle too large for the local theory");

  auto g = [&](double a) {
    return slip_residual(curve_state(1, a, ul, p), theta_out, p);
  };

  double a1 = 0.0;
  double res = g(a1);
  for (int iter = 0; iter < kMaxIter && std::abs(res) > kTol; ++iter) {
    const double h = 1e-8 * std::max(1.0, std::abs(a1));
    double deriv;
    try {
      deriv = (g(a1 + h) - res) / h;
    } catch (const domain_error&) {
      throw no_convergence_error("solve_boundary: probe left the neighborhood");
    }
    if (deriv == 0.0) throw no_convergence_error("solve_boundary: flat residual");
    const double dx = -res / deriv;
    double scale = 1.0;
    bool stepped = false;
    for (int att = 0; att < 16; ++att) {
      try {
        const double rn = g(a1 + scale * dx);
        if (std::abs(rn) < std::abs(res) || std::abs(rn) <= kTol) {
          a1 += scale * dx;
          res = rn;
          stepped = true;
          break;
        }
      } catch (const domain_error&) {
      }
      scale *= 0.5;
    }
    if (!stepped) break;
  }
  if (std::abs(res) > kAccept)
    throw no_convergence_error("solve_boundary: Newton did not converge");

  BoundaryFan fan;
  fan.alpha1 = a1;
  fan.left = ul;
  fan.wave1 = wave_curve(1, a1, ul, p);
  fan.wall_state = fan.wave1.state;
  fan.theta_out = theta_out;
  require_admissible(fan.wall_state, p, "solve_boundary(wall state)");
  return fan;
}

namespace {

// Emit one elementary wave, splitting rarefactions by the ceiling rule.
void emit_wave(std::vector<FrontSpec>* out, int family, double alpha,
               const State& entry, const WavePoint& wave, int nu,
               const SimilarityParams& p) {
  if (std::abs(alpha) < kZeroStrength) return;
  if (alpha < 0.0) {
    out->push_back({family, alpha, entry, wave.state, wave.speed, true});
    return;
  }
  const int m = std::max(1, (int)std::ceil(alpha * nu * (1.0 - 1e-12)));
  const double piece = alpha / m;
  State prev = entry;
  for (int j = 1; j <= m; ++j) {
    WavePoint wp = (j == m) ? wave : rarefaction_point(family, j * piece, entry, p);
    out->push_back({family, piece, prev, wp.state, wp.speed, false});
    prev = wp.state;
  }
}

}  // namespace

std::vector<FrontSpec> ars_fronts(const RiemannFan& fan, int nu,
                                  const SimilarityParams& p) {
  std::vector<FrontSpec> out;
  emit_wave(&out, 1, fan.alpha1, fan.left, fan.wave1, nu, p);
  emit_wave(&out, 2, fan.alpha2, fan.middle, fan.wave2, nu, p);
  return out;
}

std::vector<FrontSpec> ars_fronts(const BoundaryFan& fan, int nu,
                                  const SimilarityParams& p) {
  std::vector<FrontSpec> out;
  emit_wave(&out, 1, fan.alpha1, fan.left, fan.wave1, nu, p);
  return out;
}

std::vector<FrontSpec> srs_fronts(const FrontSpec& lower, const FrontSpec& upper,
                                  const SimilarityParams& p, double lambda_hat) {
  if (upper.family == kNonPhysical)
    throw std::logic_error("srs_fronts: nothing can catch a non-physical front");

  const State& bot = lower.left;
  const State& top = upper.right;
  std::vector<FrontSpec> out;
  State chained = bot;

  auto push_physical = [&](int family, double alpha) {
    if (std::abs(alpha) < kZeroStrength) return;
    const WavePoint w = wave_curve(family, alpha, chained, p);
    out.push_back({family, alpha, chained, w.state, w.speed, alpha < 0.0});
    chained = w.state;
  };

  if (lower.family == kNonPhysical) {
    // (iii)_3: the physical front is transmitted with unchanged strength.
    push_physical(upper.family, upper.strength);
  } else if (lower.family == upper.family) {
    push_physical(lower.family, lower.strength + upper.strength);
  } else {
    // Approaching pair of distinct families: 2-front below, 1-front above.
    push_physical(upper.family, upper.strength);
    push_physical(lower.family, lower.strength);
  }

  const double mismatch = sup_norm(chained, top);
  if (mismatch >= 1e-16 || out.empty()) {
    FrontSpec np;
    np.family = kNonPhysical;
    np.strength = mismatch;
    np.left = chained;
    np.right = top;
    np.speed = lambda_hat;
    np.is_shock = false;
    if (!(mismatch < kZeroStrength && out.empty() &&
          std::abs(lower.strength) < kZeroStrength &&
          std::abs(upper.strength) < kZeroStrength))
      out.push_back(np);
  }
  return out;
}

double lambda_hat_bound(const SimilarityParams& p) {
  double m = 0.0;
  for (double tau : {0.0, p.tau}) {
    SimilarityParams q = p;
    q.tau = tau;
    const double r = p.neighborhood_radius;
    for (double drho : {-r, 0.0, r}) {
      for (double dv : {-r, 0.0, r}) {
        const State u{1.0 + drho, dv};
        const auto [l1, l2] = eigenvalues(u, q);
        m = std::max({m, std::abs(l1), std::abs(l2)});
      }
    }
  }
  return 2.0 * m;
}

}  // namespace hyperfront
