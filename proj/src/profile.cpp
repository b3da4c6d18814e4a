#include "hyperfront/profile.hpp"

#include <algorithm>
#include <cmath>

namespace hyperfront {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Profile profile_of(const Trajectory& traj, double x) {
  double xq = x;
  int guard = 0;
  while (traj.has_event_at(xq) && guard++ < 64) xq += 1e-12;
  Profile prof;
  prof.background = traj.bottom_state();
  prof.support_floor = traj.support_floor(xq);
  prof.states.push_back(traj.bottom_state());
  for (const Front* f : traj.alive_at(xq)) {
    prof.breaks.push_back(f->y_at(xq));
    prof.states.push_back(f->right);
  }
  // Coalesce zero-width intervals so breakpoints are strictly increasing.
  for (size_t i = 0; i + 1 < prof.breaks.size();) {
    if (prof.breaks[i + 1] <= prof.breaks[i]) {
      prof.breaks.erase(prof.breaks.begin() + i);
      prof.states.erase(prof.states.begin() + i + 1);
    } else {
      ++i;
    }
  }
  return prof;
}

namespace {

// Shared sweep over merged breakpoints on (-inf, upper].
template <typename StateT, typename Jump>
double merged_l1(const std::vector<double>& ba, const std::vector<StateT>& sa,
                 const std::vector<double>& bb, const std::vector<StateT>& sb,
                 double upper, Jump jump) {
  const double tail = jump(sa.front(), sb.front());
  if (tail != 0.0)
    throw std::invalid_argument("l1_distance: profiles do not share a background tail");
  if (ba.empty() && bb.empty()) return 0.0;

  double y = kInf;
  if (!ba.empty()) y = std::min(y, ba.front());
  if (!bb.empty()) y = std::min(y, bb.front());
  if (y >= upper) return 0.0;

  size_t ia = 0, ib = 0;
  double acc = 0.0;
  while (y < upper) {
    double next = upper;
    if (ia < ba.size()) next = std::min(next, ba[ia]);
    if (ib < bb.size()) next = std::min(next, bb[ib]);
    const double d = jump(sa[ia], sb[ib]);
    if (d != 0.0 && next > y) acc += d * (next - y);  // 0 * inf stays 0
    while (ia < ba.size() && ba[ia] <= next) ++ia;
    while (ib < bb.size() && bb[ib] <= next) ++ib;
    if (next == upper) break;
    y = next;
  }
  return acc;
}

}  // namespace

double l1_distance(const Profile& a, const Profile& b, double upper) {
  if (sup_norm(a.background, b.background) > 1e-12)
    throw std::invalid_argument("l1_distance: backgrounds differ");
  return merged_l1(a.breaks, a.states, b.breaks, b.states, upper,
                   [](const State& u, const State& v) { return abs_sum(u, v); });
}

double l1_distance_scalar(const ScalarProfile& a, const ScalarProfile& b,
                          double upper) {
  if (std::abs(a.background - b.background) > 1e-12)
    throw std::invalid_argument("l1_distance: backgrounds differ");
  return merged_l1(a.breaks, a.values, b.breaks, b.values, upper,
                   [](double u, double v) { return std::abs(u - v); });
}

ScalarProfile reconstruct_u(const Profile& prof, const SimilarityParams& p) {
  ScalarProfile out;
  out.breaks = prof.breaks;
  out.values.reserve(prof.states.size());
  for (const State& s : prof.states) out.values.push_back(axial_velocity(s, p));
  out.background = axial_velocity(prof.background, p);
  return out;
}

double total_variation(const Profile& prof) {
  double tv = 0.0;
  for (size_t i = 0; i + 1 < prof.states.size(); ++i)
    tv += abs_sum(prof.states[i], prof.states[i + 1]);
  return tv;
}

Profile TrajectoryStep::evolve(const Profile&, double x, double s) const {
  return profile_of(traj_, x + s);
}

Profile RiemannStep::evolve(const Profile& at_x, double x, double s) const {
  (void)x;
  struct Moving {
    double y0;
    double speed;
    State right;
  };
  std::vector<Moving> moving;
  State bottom = at_x.states.front();
  for (size_t j = 0; j < at_x.breaks.size(); ++j) {
    const State& ul = at_x.states[j];
    const State& ur = at_x.states[j + 1];
    if (abs_sum(ul, ur) < 1e-14) continue;
    const RiemannFan fan = solve_interior(ul, ur, params_);
    auto specs = ars_fronts(fan, nu_, params_);
    if (specs.empty()) continue;
    specs.back().right = ur;
    specs.front().left = ul;
    for (const auto& sp : specs)
      moving.push_back({at_x.breaks[j], sp.speed, sp.right});
  }
  Profile out;
  out.background = at_x.background;
  out.support_floor = at_x.support_floor - 1.0;
  out.states.push_back(bottom);
  double prev = -kInf;
  for (const Moving& m : moving) {
    const double y = m.y0 + m.speed * s;
    if (y < prev)
      throw std::invalid_argument("one-step evolution: fronts crossed, step too large");
    prev = y;
    out.breaks.push_back(y);
    out.states.push_back(m.right);
  }
  return out;
}

double local_step_error(const Trajectory& traj, const OneStepEvolution& ref,
                        double x, double s) {
  if (!(s > 0.0)) throw std::invalid_argument("local_step_error: s <= 0");
  for (const EventRecord& e : traj.events())
    if (e.x > x && e.x <= x + s)
      throw std::invalid_argument("local_step_error: event inside the window");
  const Profile px = profile_of(traj, x);
  const Profile evolved = ref.evolve(px, x, s);
  const Profile actual = profile_of(traj, x + s);
  const double upper = traj.wall_at(x + s);
  return l1_distance(evolved, actual, upper) / s;
}

FitResult fit_rate(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 3)
    throw std::invalid_argument("fit_rate: need at least 3 points");
  std::vector<double> xs, ys;
  for (const auto& [tau, err] : pairs) {
    if (!(tau > 0.0) || !(err > 0.0))
      throw std::invalid_argument("fit_rate: tau and error must be positive");
    xs.push_back(std::log(tau));
    ys.push_back(std::log(err));
  }
  for (size_t i = 0; i < xs.size(); ++i)
    for (size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j])
        throw std::invalid_argument("fit_rate: tau values must be distinct");
  const double n = (double)xs.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace hyperfront
