#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperfront/curves.hpp"

using namespace hyperfront;

namespace {

SimilarityParams params(double tau) { return {1.4, 0.5, tau, 0.1}; }

std::mt19937_64 rng(911);

State random_state(double radius) {
  std::uniform_real_distribution<double> d(-radius, radius);
  return {1.0 + d(rng), d(rng)};
}

double lambda_of(int family, const State& u, const SimilarityParams& p) {
  const auto [l1, l2] = eigenvalues(u, p);
  return family == 1 ? l1 : l2;
}

}  // namespace

TEST_CASE("zero strength is the identity on both branches") {
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    const State u{1.02, -0.03};
    for (int family : {1, 2}) {
      const WavePoint r = rarefaction_point(family, 0.0, u, p);
      const WavePoint s = shock_point(family, 0.0, u, p);
      CHECK(r.state == u);
      CHECK(s.state == u);
      CHECK(r.speed == lambda_of(family, u, p));
      CHECK(s.speed == lambda_of(family, u, p));
    }
  }
}

TEST_CASE("curve tangent at zero is the normalized eigenvector") {
  const double eps = 1e-6;
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    const State u{1.0, 0.0};
    for (int family : {1, 2}) {
      const Vec2 r = eigenvector(family, u, p);
      const State plus = rarefaction_point(family, eps, u, p).state;
      const State minus = shock_point(family, -eps, u, p).state;
      CHECK((plus.rho - u.rho) / eps == doctest::Approx(r[0]).epsilon(1e-5));
      CHECK((plus.v - u.v) / eps == doctest::Approx(r[1]).epsilon(1e-5));
      CHECK((u.rho - minus.rho) / eps == doctest::Approx(r[0]).epsilon(1e-5));
      CHECK((u.v - minus.v) / eps == doctest::Approx(r[1]).epsilon(1e-5));
    }
  }
}

TEST_CASE("lambda increases by exactly alpha along the curve") {
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    for (int i = 0; i < 50; ++i) {
      const State u = random_state(0.04);
      for (int family : {1, 2}) {
        const double l0 = lambda_of(family, u, p);
        const WavePoint wr = rarefaction_point(family, 0.01, u, p);
        CHECK(lambda_of(family, wr.state, p) - l0 == doctest::Approx(0.01).epsilon(1e-8));
        const WavePoint ws = shock_point(family, -0.01, u, p);
        CHECK(lambda_of(family, ws.state, p) - l0 == doctest::Approx(-0.01).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("Rankine-Hugoniot residual on the shock branch") {
  std::uniform_real_distribution<double> da(-0.05, -1e-4);
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    for (int i = 0; i < 200; ++i) {
      const State u = random_state(0.04);
      const double alpha = da(rng);
      for (int family : {1, 2}) {
        const WavePoint w = shock_point(family, alpha, u, p);
        CHECK(rankine_hugoniot_residual(u, w.state, w.speed, p) <= 1e-10);
      }
    }
  }
}

TEST_CASE("Lax inequalities hold strictly on the shock branch") {
  std::uniform_real_distribution<double> da(-0.05, -1e-6);
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    for (int i = 0; i < 100; ++i) {
      const State u = random_state(0.04);
      const double alpha = da(rng);
      for (int family : {1, 2}) {
        const WavePoint w = shock_point(family, alpha, u, p);
        CHECK(lambda_of(family, w.state, p) < w.speed);
        CHECK(w.speed < lambda_of(family, u, p));
      }
    }
  }
}

TEST_CASE("shock speed derivative at zero strength is one half") {
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    const State u{1.0, 0.0};
    const double eps = 1e-3;
    for (int family : {1, 2}) {
      const double s_minus = shock_point(family, -eps, u, p).speed;
      const double s0 = lambda_of(family, u, p);
      const double deriv = (s0 - s_minus) / eps;
      CHECK(std::abs(deriv - 0.5) < 1e-4 + 2.0 * eps);
    }
  }
}

TEST_CASE("shock and rarefaction branches match to second order") {
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    const State u{1.0, 0.0};
    for (int family : {1, 2}) {
      double prev_diff = 0.0;
      double prev_eps = 0.0;
      for (double eps : {1e-2, 1e-3}) {
        const State shock = shock_point(family, -eps, u, p).state;
        const State extended = integrate_eigenvector_ode(family, -eps, u, p);
        const double diff = sup_norm(shock, extended);
        if (prev_eps > 0.0) {
          const double slope = std::log(prev_diff / diff) / std::log(prev_eps / eps);
          CHECK(slope >= 2.7);
        }
        prev_diff = diff;
        prev_eps = eps;
      }
    }
  }
}

TEST_CASE("small-disturbance rarefaction follows the Riemann invariant") {
  // 1-curve: v - v_L = -(2/(a (gamma-1))) (c - c_L), integrated exactly.
  const SimilarityParams p = params(0.0);
  const double gamma = 1.4, a = 0.5;
  for (int i = 0; i < 50; ++i) {
    const State u = random_state(0.04);
    for (double alpha : {0.01, 0.03, 0.05}) {
      const State w = rarefaction_point(1, alpha, u, p).state;
      const double lhs = w.v - u.v;
      const double rhs = -(2.0 / (a * (gamma - 1.0))) *
                         (std::pow(w.rho, 0.5 * (gamma - 1.0)) -
                          std::pow(u.rho, 0.5 * (gamma - 1.0)));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
  }
}

TEST_CASE("the tau = 0 call produces genuine small-disturbance waves") {
  const SimilarityParams p = params(0.0);
  const State u{1.01, 0.02};
  for (int family : {1, 2}) {
    for (double alpha : {-0.01, 0.01}) {
      const WavePoint w = wave_curve(family, alpha, u, p);
      CHECK(w.family == family);
      CHECK(w.strength == alpha);
      if (alpha < 0.0)
        CHECK(rankine_hugoniot_residual(u, w.state, w.speed, p) <= 1e-10);
      else
        CHECK(lambda_of(family, w.state, p) - lambda_of(family, u, p) ==
              doctest::Approx(alpha).epsilon(1e-9));
    }
  }
}

TEST_CASE("curves are monotone in the family eigenvalue") {
  for (double tau : {0.0, 0.1}) {
    const SimilarityParams p = params(tau);
    const State u{1.0, 0.0};
    for (int family : {1, 2}) {
      double prev = -1e30;
      for (double alpha : {-0.05, -0.02, 0.0, 0.02, 0.05}) {
        const WavePoint w = wave_curve(family, alpha, u, p);
        const double lam = lambda_of(family, w.state, p);
        CHECK(lam > prev);
        prev = lam;
      }
    }
  }
}

TEST_CASE("composing zero-strength waves is the identity") {
  const SimilarityParams p = params(0.1);
  const State u{1.03, -0.02};
  const State mid = wave_curve(1, 0.0, u, p).state;
  const State out = wave_curve(2, 0.0, mid, p).state;
  CHECK(out == u);
}

TEST_CASE("curve domain guards") {
  const SimilarityParams p = params(0.1);
  CHECK_THROWS_AS(rarefaction_point(1, 0.3, {1.0, 0.0}, p), domain_error);
  CHECK_THROWS_AS(shock_point(1, -0.3, {1.0, 0.0}, p), domain_error);
  CHECK_THROWS_AS(rarefaction_point(1, 0.01, {1.4, 0.0}, p), domain_error);
  CHECK_THROWS_AS(rarefaction_point(1, -0.01, {1.0, 0.0}, p), std::invalid_argument);
  CHECK_THROWS_AS(shock_point(1, 0.01, {1.0, 0.0}, p), std::invalid_argument);
}
