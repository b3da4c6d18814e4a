#include "hyperfront/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfront {

double BoundarySpec::value(double x) const {
  if (kind == Kind::piecewise_linear) {
    double b = 0.0;
    for (size_t i = 0; i < slopes.size(); ++i) {
      const double seg_lo = breakpoints[i];
      const double seg_hi = (i + 1 < breakpoints.size())
                                ? breakpoints[i + 1]
                                : std::max(x, seg_lo);
      if (x <= seg_lo) break;
      b += slopes[i] * (std::min(x, seg_hi) - seg_lo);
      if (x <= seg_hi) break;
    }
    return b;
  }
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) {
    const double s = far_slope ? *far_slope : slope(xs.back());
    return ys.back() + (x - xs.back()) * s;
  }
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = (size_t)(it - xs.begin()) - 1;
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

double BoundarySpec::slope(double x) const {
  if (kind == Kind::piecewise_linear) {
    size_t i = 0;
    while (i + 1 < breakpoints.size() && x >= breakpoints[i + 1]) ++i;
    return slopes[i];
  }
  if (x >= xs.back()) return far_slope ? *far_slope : slope(xs.back() - 1e-12);
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const size_t i = it == xs.begin() ? 0 : (size_t)(it - xs.begin()) - 1;
  const size_t j = std::min(i + 1, xs.size() - 1);
  return (ys[j] - ys[i]) / (xs[j] - xs[i]);
}

double BoundarySpec::domain_end() const {
  if (kind == Kind::piecewise_linear) return breakpoints.back();
  return xs.back();
}

void BoundarySpec::validate_wedge() const {
  if (kind == Kind::piecewise_linear) {
    if (breakpoints.empty() || slopes.size() != breakpoints.size())
      throw invalid_boundary_error("boundary: breakpoints/slopes size mismatch");
    if (breakpoints.front() != 0.0)
      throw invalid_boundary_error("boundary: first breakpoint must be 0");
    for (size_t i = 1; i < breakpoints.size(); ++i)
      if (!(breakpoints[i] > breakpoints[i - 1]))
        throw invalid_boundary_error("boundary: breakpoints not increasing");
  } else {
    if (xs.size() < 2 || xs.size() != ys.size())
      throw invalid_boundary_error("boundary: need at least two samples");
    if (xs.front() != 0.0 || ys.front() != 0.0)
      throw invalid_boundary_error("boundary: samples must start at (0, 0)");
    for (size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1]))
        throw invalid_boundary_error("boundary: sample xs not increasing");
  }
  if (std::abs(value(0.0)) > 1e-14)
    throw invalid_boundary_error("boundary: b(0) != 0");
  if (slope(0.0) > 0.0)
    throw invalid_boundary_error("boundary: b'(0) > 0 violates the wedge hypothesis");
  // b <= 0 on the described domain (flat walls are admitted).
  const double end = domain_end();
  const int n = 200;
  for (int i = 1; i <= n; ++i) {
    const double x = end * i / n;
    if (value(x) > 1e-12)
      throw invalid_boundary_error("boundary: b(x) > 0 inside the wedge domain");
  }
}

double BoundaryPolyline::b_at(double x) const {
  const int k = std::min((int)(x / h), k_star);
  if (k >= k_star)
    return bk[k_star] + (x - k_star * h) * far_slope;
  return bk[k] + (x - k * h) * std::tan(theta[k]);
}

double BoundaryPolyline::theta_at(double x) const {
  const int k = (int)(x / h);
  if (k >= k_star) return std::atan(far_slope);
  return theta[k];
}

double BoundaryPolyline::total_turn() const {
  double s = 0.0;
  for (const auto& [x, w] : corners) s += std::abs(w);
  return s;
}

BoundaryPolyline build_polyline(const BoundarySpec& spec, double h) {
  if (!(h > 0.0)) throw invalid_boundary_error("build_polyline: h <= 0");
  spec.validate_wedge();
  if (spec.kind == BoundarySpec::Kind::samples) {
    // Mesh-point interpolation needs exact wall values at every k h.
    double max_gap = 0.0;
    for (size_t i = 1; i < spec.xs.size(); ++i)
      max_gap = std::max(max_gap, spec.xs[i] - spec.xs[i - 1]);
    if (max_gap > h)
      throw invalid_boundary_error("build_polyline: samples coarser than h");
  }

  BoundaryPolyline poly;
  poly.h = h;

  // Far slope: trusted when supplied, otherwise estimated from the last
  // window of width 10h.
  const double end = spec.domain_end();
  double far;
  if (spec.far_slope) {
    far = *spec.far_slope;
  } else if (spec.kind == BoundarySpec::Kind::piecewise_linear) {
    far = spec.slopes.back();
  } else {
    const double lo = std::max(0.0, end - 10.0 * h);
    far = (spec.value(end) - spec.value(lo)) / (end - lo);
  }
  poly.far_slope = far;

  // k_star: first mesh index at/after the last supplied structure whose
  // tail stays within h of the far slope in sup norm and contributes at
  // most h/2 to the L1 slope error once frozen.
  const int k_end = std::max(1, (int)std::ceil(end / h - 1e-9));
  const int grid_n = 4096;
  std::vector<double> suffix_sup(grid_n + 1, 0.0), suffix_int(grid_n + 1, 0.0);
  for (int i = grid_n - 1; i >= 0; --i) {
    const double x = end * (i + 0.5) / grid_n;
    const double dev = std::abs(spec.slope(x) - far);
    suffix_sup[i] = std::max(suffix_sup[i + 1], dev);
    suffix_int[i] = suffix_int[i + 1] + dev * (end / grid_n);
  }
  auto tail_ok = [&](double x0) {
    const int i = std::clamp((int)(x0 / end * grid_n), 0, grid_n);
    return suffix_sup[i] <= h && suffix_int[i] <= 0.5 * h;
  };
  int k_star = k_end;
  for (int k = (spec.kind == BoundarySpec::Kind::piecewise_linear
                    ? (int)std::ceil(spec.breakpoints.back() / h - 1e-9)
                    : 0);
       k <= k_end; ++k) {
    if (k * h >= end || tail_ok(k * h)) {
      k_star = std::max(1, k);
      break;
    }
  }
  poly.k_star = k_star;

  poly.bk.resize(k_star + 1);
  for (int k = 0; k <= k_star; ++k) poly.bk[k] = spec.value(k * h);
  poly.theta.resize(k_star);
  for (int k = 0; k < k_star; ++k)
    poly.theta[k] = std::atan((poly.bk[k + 1] - poly.bk[k]) / h);

  // Corner events: the leading-edge turn from the incoming horizontal
  // direction, then every interior angle change including the one onto the
  // frozen far-field segment.
  const double far_angle = std::atan(far);
  auto angle_at = [&](int k) {
    return k < k_star ? poly.theta[k] : far_angle;
  };
  if (std::abs(angle_at(0)) > 1e-15) poly.corners.emplace_back(0.0, angle_at(0));
  for (int k = 1; k <= k_star; ++k) {
    const double w = angle_at(k) - angle_at(k - 1);
    if (std::abs(w) > 1e-15) poly.corners.emplace_back(k * h, w);
  }
  return poly;
}

std::vector<std::pair<double, double>> corner_schedule(const BoundaryPolyline& poly) {
  return poly.corners;
}

void WingGeometry::validate() const {
  if (!(chord > 0.0)) throw invalid_boundary_error("wing: chord <= 0");
  for (const BoundarySpec* s : {&upper, &lower}) {
    if (std::abs(s->value(0.0)) > 1e-12 || std::abs(s->value(chord)) > 1e-12)
      throw invalid_boundary_error("wing: surfaces must vanish at both ends");
  }
  if (upper.slope(0.0) < 0.0 || lower.slope(0.0) > 0.0)
    throw invalid_boundary_error("wing: leading-edge slopes have the wrong sign");
  const int n = 200;
  for (int i = 1; i < n; ++i) {
    const double x = chord * i / n;
    if (upper.value(x) < -1e-12 || lower.value(x) > 1e-12)
      throw invalid_boundary_error("wing: surfaces cross the chord line");
  }
}

namespace {

BoundarySpec mirror_spec(const BoundarySpec& s) {
  BoundarySpec m = s;
  if (m.kind == BoundarySpec::Kind::piecewise_linear) {
    for (double& v : m.slopes) v = -v;
  } else {
    for (double& v : m.ys) v = -v;
  }
  if (m.far_slope) m.far_slope = -*m.far_slope;
  return m;
}

}  // namespace

HalfProblems wing_to_half_problems(const WingGeometry& wing) {
  wing.validate();
  HalfProblems hp;
  hp.lower = wing.lower;
  hp.upper_mirrored = mirror_spec(wing.upper);
  hp.chord = wing.chord;
  return hp;
}

WingGeometry make_parabolic_lens(double chord, double thickness, int segments) {
  if (segments < 2) throw invalid_boundary_error("lens: need >= 2 segments");
  WingGeometry w;
  w.chord = chord;
  const double half = 0.5 * thickness;
  auto camber = [&](double x) { return 4.0 * half * x * (chord - x) / (chord * chord); };
  BoundarySpec up;
  up.kind = BoundarySpec::Kind::piecewise_linear;
  for (int i = 0; i < segments; ++i) {
    const double x0 = chord * i / segments;
    const double x1 = chord * (i + 1) / segments;
    up.breakpoints.push_back(x0);
    up.slopes.push_back((camber(x1) - camber(x0)) / (x1 - x0));
  }
  // Past the trailing edge the wall is the horizontal chord line.
  up.breakpoints.push_back(chord);
  up.slopes.push_back(0.0);
  up.far_slope = 0.0;
  w.upper = up;
  w.lower = mirror_spec(up);
  return w;
}

}  // namespace hyperfront
