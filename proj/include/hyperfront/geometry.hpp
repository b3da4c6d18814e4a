#ifndef HYPERFRONT_GEOMETRY_HPP_
#define HYPERFRONT_GEOMETRY_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "hyperfront/types.hpp"

namespace hyperfront {

/// User-supplied wall description: either closed-form piecewise-linear
/// slope pieces or dense samples on a grid finer than the mesh length.
struct BoundarySpec {
  enum class Kind { piecewise_linear, samples };
  Kind kind = Kind::piecewise_linear;

  // piecewise_linear: slopes[i] applies on [breakpoints[i], breakpoints[i+1]),
  // the last slope extends to the end of the domain. breakpoints[0] == 0.
  std::vector<double> breakpoints;
  std::vector<double> slopes;

  // samples: strictly increasing xs with xs[0] == 0, ys[0] == 0.
  std::vector<double> xs, ys;

  std::optional<double> far_slope;  // b'_inf, trusted when supplied

  double value(double x) const;   // b(x)
  double slope(double x) const;   // b'(x), right-continuous
  double domain_end() const;      // last x the description covers
  void validate_wedge() const;    // b(0)=0, b'(0)<=0, b<=0
};

/// h-approximate wall: corner points (k h, b(k h)), segment angles, and the
/// frozen far-field slope beyond k_star.
struct BoundaryPolyline {
  double h = 0.0;
  std::vector<double> bk;      // b at x_k = k h, k = 0..k_star
  std::vector<double> theta;   // segment angle on [x_k, x_{k+1}), k < k_star
  double far_slope = 0.0;      // slope for x >= x_star
  int k_star = 0;

  /// Corner events (x, turn), nonzero turns only, increasing x. The entry
  /// at x = 0 is the leading edge turn from the horizontal direction.
  std::vector<std::pair<double, double>> corners;

  double b_at(double x) const;
  double theta_at(double x) const;
  double total_turn() const;  // sum |turn| over corners
};

BoundaryPolyline build_polyline(const BoundarySpec& spec, double h);

std::vector<std::pair<double, double>> corner_schedule(const BoundaryPolyline& poly);

/// Wing: upper and lower surface functions on [0, chord] with
/// b_-(x) < 0 < b_+(x) inside and zeros at both ends.
struct WingGeometry {
  BoundarySpec upper;  // b_+
  BoundarySpec lower;  // b_-
  double chord = 1.0;

  void validate() const;
};

/// The two independent half-plane wedge problems: the lower one as-is, the
/// upper one reflected (y -> -y, v -> -v) so both run with the wall on top.
struct HalfProblems {
  BoundarySpec lower;
  BoundarySpec upper_mirrored;
  double chord = 1.0;
};

HalfProblems wing_to_half_problems(const WingGeometry& wing);

/// Symmetric lens whose surfaces are polyline samplings of
/// +-(thickness/2) * 4 x (chord - x) / chord^2.
WingGeometry make_parabolic_lens(double chord, double thickness, int segments);

}  // namespace hyperfront

#endif  // HYPERFRONT_GEOMETRY_HPP_
