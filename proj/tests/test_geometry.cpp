#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfront/geometry.hpp"

using namespace hyperfront;

namespace {

BoundarySpec straight_wall(double slope) {
  BoundarySpec s;
  s.kind = BoundarySpec::Kind::piecewise_linear;
  s.breakpoints = {0.0};
  s.slopes = {slope};
  return s;
}

BoundarySpec two_slope_wall() {
  BoundarySpec s;
  s.kind = BoundarySpec::Kind::piecewise_linear;
  s.breakpoints = {0.0, 1.0};
  s.slopes = {-0.05, -0.07};
  s.far_slope = -0.07;
  return s;
}

// TV of arctan(b') over the polyline including the frozen tail segment.
double arctan_tv(const BoundaryPolyline& poly) {
  double tv = 0.0;
  auto ang = [&](int k) {
    return k < poly.k_star ? poly.theta[k] : std::atan(poly.far_slope);
  };
  for (int k = 1; k <= poly.k_star; ++k) tv += std::abs(ang(k) - ang(k - 1));
  return tv;
}

}  // namespace

TEST_CASE("straight wall: single leading-edge corner") {
  const double slope = -std::tan(0.05);
  const BoundaryPolyline poly = build_polyline(straight_wall(slope), 0.05);
  REQUIRE(poly.corners.size() == 1);
  CHECK(poly.corners[0].first == 0.0);
  CHECK(poly.corners[0].second == doctest::Approx(-0.05).epsilon(1e-12));
  // interpolation at mesh points and beyond
  CHECK(poly.b_at(0.3) == doctest::Approx(0.3 * slope).epsilon(1e-14));
  CHECK(poly.b_at(7.5) == doctest::Approx(7.5 * slope).epsilon(1e-13));
}

TEST_CASE("two-slope wall: exactly two corners") {
  const BoundaryPolyline poly = build_polyline(two_slope_wall(), 0.05);
  REQUIRE(poly.corners.size() == 2);
  CHECK(poly.corners[0].first == 0.0);
  CHECK(poly.corners[0].second == doctest::Approx(std::atan(-0.05)).epsilon(1e-12));
  CHECK(poly.corners[1].first == doctest::Approx(1.0).epsilon(1e-12));
  const double expect = -(std::atan(0.07) - std::atan(0.05));
  CHECK(poly.corners[1].second == doctest::Approx(expect).epsilon(1e-10));
  CHECK(poly.b_at(2.0) == doctest::Approx(-0.05 - 0.07).epsilon(1e-12));
}

TEST_CASE("corner schedule is the nonzero-turn list, increasing in x") {
  const BoundaryPolyline poly = build_polyline(two_slope_wall(), 0.05);
  const auto sched = corner_schedule(poly);
  REQUIRE(sched.size() == 2);
  CHECK(sched[0].first < sched[1].first);
  for (const auto& [x, w] : sched) CHECK(w != 0.0);
}

TEST_CASE("sum of corner turns equals the turning variation") {
  const BoundaryPolyline poly = build_polyline(two_slope_wall(), 0.05);
  double interior = 0.0;
  for (const auto& [x, w] : poly.corners)
    if (x > 0.0) interior += std::abs(w);
  CHECK(interior == doctest::Approx(arctan_tv(poly)).epsilon(1e-12));
}

TEST_CASE("L1 distance between b'_h and b' is at most h") {
  // piecewise-smooth wall supplied as dense samples
  auto b = [](double x) { return -0.05 * x - 0.01 * std::sin(x); };
  for (double h : {0.1, 0.05, 0.025}) {
    BoundarySpec spec;
    spec.kind = BoundarySpec::Kind::samples;
    const int n = 4000;
    const double xmax = 4.0;
    for (int i = 0; i <= n; ++i) {
      const double x = xmax * i / n;
      spec.xs.push_back(x);
      spec.ys.push_back(b(x));
    }
    spec.far_slope = -0.05 - 0.01 * std::cos(xmax);
    const BoundaryPolyline poly = build_polyline(spec, h);
    // quadrature of |b'_h - b'| on [0, xmax]
    double acc = 0.0;
    const int q = 40000;
    for (int i = 0; i < q; ++i) {
      const double x = xmax * (i + 0.5) / q;
      const double bp = -0.05 - 0.01 * std::cos(x);
      const double bph = std::tan(poly.theta_at(x));
      acc += std::abs(bph - bp) * (xmax / q);
    }
    CHECK(acc <= h);
  }
}

TEST_CASE("polyline turning variation never exceeds the wall's") {
  auto b = [](double x) { return -0.04 * x - 0.02 * std::sin(2.0 * x); };
  BoundarySpec spec;
  spec.kind = BoundarySpec::Kind::samples;
  const int n = 6000;
  const double xmax = 5.0;
  for (int i = 0; i <= n; ++i) {
    const double x = xmax * i / n;
    spec.xs.push_back(x);
    spec.ys.push_back(b(x));
  }
  spec.far_slope = -0.04 - 0.04 * std::cos(2.0 * xmax);
  // TV of b' on [0, xmax]: integral of |b''| = 0.08 |sin|
  double tv_exact = 0.0;
  const int q = 20000;
  for (int i = 0; i < q; ++i) {
    const double x = xmax * (i + 0.5) / q;
    tv_exact += 0.08 * std::abs(std::sin(2.0 * x)) * (xmax / q);
  }
  for (double h : {0.1, 0.05}) {
    const BoundaryPolyline poly = build_polyline(spec, h);
    double tv_h = 0.0;
    auto slope = [&](int k) {
      return k < poly.k_star ? std::tan(poly.theta[k]) : poly.far_slope;
    };
    for (int k = 1; k <= poly.k_star; ++k)
      tv_h += std::abs(slope(k) - slope(k - 1));
    CHECK(tv_h <= tv_exact + 1e-9);
  }
}

TEST_CASE("b_h converges uniformly as h halves") {
  // b' dips well below the far slope on the head so the tail freeze
  // recedes as h shrinks.
  auto b = [](double x) {
    return -0.03 * x - 0.15 * (0.5 * x - std::sin(M_PI * x) / (2.0 * M_PI));
  };
  BoundarySpec spec;
  spec.kind = BoundarySpec::Kind::samples;
  const int n = 8000;
  const double xmax = 2.0;
  for (int i = 0; i <= n; ++i) {
    const double x = xmax * i / n;
    spec.xs.push_back(x);
    spec.ys.push_back(b(x));
  }
  spec.far_slope = -0.03;
  double prev = 0.0;
  for (double h : {0.1, 0.05}) {
    const BoundaryPolyline poly = build_polyline(spec, h);
    double sup = 0.0;
    for (int i = 0; i < 3000; ++i) {
      const double x = xmax * (i + 0.5) / 3000;
      sup = std::max(sup, std::abs(poly.b_at(x) - b(x)));
    }
    if (prev > 0.0) CHECK(sup < 0.75 * prev);
    prev = sup;
  }
}

TEST_CASE("polyline construction is deterministic") {
  const BoundaryPolyline a = build_polyline(two_slope_wall(), 0.05);
  const BoundaryPolyline b = build_polyline(two_slope_wall(), 0.05);
  REQUIRE(a.corners.size() == b.corners.size());
  for (size_t i = 0; i < a.corners.size(); ++i) {
    CHECK(a.corners[i].first == b.corners[i].first);
    CHECK(a.corners[i].second == b.corners[i].second);
  }
  CHECK(a.bk == b.bk);
}

TEST_CASE("wedge hypothesis violations are rejected") {
  BoundarySpec up = straight_wall(0.03);  // climbing wall
  CHECK_THROWS_AS(build_polyline(up, 0.05), invalid_boundary_error);
  BoundarySpec coarse;
  coarse.kind = BoundarySpec::Kind::samples;
  coarse.xs = {0.0, 0.5, 1.0};
  coarse.ys = {0.0, -0.02, -0.04};
  CHECK_THROWS_AS(build_polyline(coarse, 0.05), invalid_boundary_error);
}

TEST_CASE("flat wall is admitted") {
  const BoundaryPolyline poly = build_polyline(straight_wall(0.0), 0.05);
  CHECK(poly.corners.empty());
  CHECK(poly.b_at(3.0) == 0.0);
}

TEST_CASE("symmetric lens: half problems are mirror images") {
  const WingGeometry lens = make_parabolic_lens(1.0, 0.05, 10);
  lens.validate();
  const HalfProblems hp = wing_to_half_problems(lens);
  CHECK(hp.chord == 1.0);
  REQUIRE(hp.lower.slopes.size() == hp.upper_mirrored.slopes.size());
  for (size_t i = 0; i < hp.lower.slopes.size(); ++i)
    CHECK(hp.lower.slopes[i] == hp.upper_mirrored.slopes[i]);
  // both halves are admissible wedge walls on [0, chord]
  const BoundaryPolyline lo = build_polyline(hp.lower, 0.05);
  const BoundaryPolyline um = build_polyline(hp.upper_mirrored, 0.05);
  CHECK(std::abs(lo.b_at(1.0)) < 1e-14);
  CHECK(std::abs(um.b_at(1.0)) < 1e-14);
  CHECK(lo.b_at(0.5) < 0.0);
}

TEST_CASE("zero-thickness wing is admitted") {
  WingGeometry w;
  w.chord = 1.0;
  BoundarySpec flat = straight_wall(0.0);
  w.upper = flat;
  w.lower = flat;
  CHECK_NOTHROW(w.validate());
}

TEST_CASE("crossing surfaces are rejected") {
  WingGeometry w;
  w.chord = 1.0;
  w.upper = straight_wall(0.0);
  BoundarySpec bad;
  bad.kind = BoundarySpec::Kind::piecewise_linear;
  bad.breakpoints = {0.0, 0.5};
  bad.slopes = {0.05, -0.05};  // lower surface pokes above the chord line
  w.lower = bad;
  CHECK_THROWS_AS(w.validate(), invalid_boundary_error);
}
