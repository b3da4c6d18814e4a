#include "hyperfront/engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <queue>
#include <cmath>

namespace hyperfront {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTinyJump = 1e-13;

double splitmix_unit(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  z = z ^ (z >> 31);
  return (double)(z >> 11) * 0x1.0p-53;
}

}  // namespace

GlimmWeights calibrate_weights(const SimilarityParams& p) {
  const double d = 1e-5;
  // Reflection coefficient: a family-2 wave of strength d arriving at a
  // horizontal wall holding the background, reflected as a family-1 wave.
  const State ul = integrate_eigenvector_ode(2, -d, kBackground, p);
  const double kb_coef = solve_boundary(ul, 0.0, p).alpha1 / d;
  // Corner coefficient d(alpha_1)/d(omega) at the background.
  const double kc_coef = solve_boundary(kBackground, d, p).alpha1 / d;
  GlimmWeights w;
  w.k = 4.0;
  w.k_b = std::max(1.0, std::abs(kb_coef)) + 0.25;
  w.k_c = std::max(1.0, std::abs(kc_coef)) + 0.25;
  return w;
}

GlimmSnapshot glimm_of(const std::vector<const Front*>& fronts,
                       double vc_remaining, const GlimmWeights& w) {
  GlimmSnapshot g;
  g.vc = vc_remaining;
  // Only physical fronts enter V and Q; non-physical bookkeeping fronts can
  // vastly outnumber them.
  std::vector<const Front*> phys;
  phys.reserve(fronts.size());
  for (const Front* f : fronts) {
    if (!f->physical()) continue;
    phys.push_back(f);
    (f->family == 1 ? g.v1 : g.v2) += std::abs(f->strength);
  }
  // Approaching pairs: distinct families with the faster (family 2) below,
  // or the same family with at least one shock.
  for (size_t i = 0; i < phys.size(); ++i) {
    const Front* lo = phys[i];
    for (size_t j = i + 1; j < phys.size(); ++j) {
      const Front* hi = phys[j];
      const bool approaching =
          (lo->family != hi->family) ? (lo->family == 2 && hi->family == 1)
                                     : (lo->is_shock || hi->is_shock);
      if (approaching) g.q += std::abs(lo->strength) * std::abs(hi->strength);
    }
  }
  g.total = g.v1 + w.k_b * g.v2 + w.k_c * g.vc + w.k * g.q;
  return g;
}

double InitialData::total_variation() const {
  switch (kind) {
    case Kind::constant:
      return 0.0;
    case Kind::jumps: {
      double tv = 0.0;
      for (size_t i = 0; i + 1 < states.size(); ++i)
        tv += abs_sum(states[i], states[i + 1]);
      return tv;
    }
    case Kind::bump:
      return 2.0 * (std::abs(amp_rho) + std::abs(amp_v));
  }
  return 0.0;
}

SampledData sample_initial_data(const InitialData& data, int nu) {
  SampledData out;
  switch (data.kind) {
    case InitialData::Kind::constant:
      out.states = {kBackground};
      return out;
    case InitialData::Kind::jumps: {
      if (data.states.size() != data.positions.size() + 1)
        throw invalid_data_error("initial data: jumps need positions+1 states");
      for (size_t i = 1; i < data.positions.size(); ++i)
        if (!(data.positions[i] > data.positions[i - 1]))
          throw invalid_data_error("initial data: jump positions not increasing");
      for (const State& s : data.states)
        if (!(s.rho > 0.0)) throw invalid_data_error("initial data: rho <= 0");
      out.positions = data.positions;
      out.states = data.states;
      return out;
    }
    case InitialData::Kind::bump:
      break;
  }
  if (std::abs(data.amp_rho) >= 1.0)
    throw invalid_data_error("initial data: bump drives rho <= 0");
  if (data.amp_rho == 0.0 && data.amp_v == 0.0) {
    out.states = {kBackground};
    return out;
  }
  const double tv = data.total_variation();
  const double target = std::ldexp(1.0, -nu);
  // Midpoint sampling: L1 error <= (cell/2) * TV, kept under 0.9 * 2^-nu.
  double cell = std::min(data.width / 8.0, 1.8 * target / tv);
  const int n = (int)std::ceil(data.width / cell);
  cell = data.width / n;
  const double lo = data.center - 0.5 * data.width;
  auto phi = [&](double y) {
    return 0.5 * (1.0 + std::cos(2.0 * M_PI * (y - data.center) / data.width));
  };
  out.states.push_back(kBackground);
  for (int j = 0; j < n; ++j) {
    const double mid = lo + (j + 0.5) * cell;
    const double w = phi(mid);
    out.positions.push_back(lo + j * cell);
    out.states.push_back({1.0 + data.amp_rho * w, data.amp_v * w});
  }
  out.positions.push_back(lo + n * cell);
  out.states.push_back(kBackground);
  return out;
}


class EngineImpl {
 public:
  explicit EngineImpl(const EngineConfig& cfg) : cfg_(cfg) {}

  Trajectory run() {
    cfg_.params.validate();
    if (cfg_.mode == GeometryMode::ibvp && !cfg_.wall)
      throw invalid_boundary_error("engine: ibvp mode needs a wall");
    traj_.config_ = cfg_;
    traj_.lambda_hat_ = lambda_hat_bound(cfg_.params);
    traj_.weights_ = calibrate_weights(cfg_.params);

    validate_initial();
    check_budget_hypothesis();
    initialize();

    std::size_t events = 0;
    while (step()) {
      if (++events > cfg_.max_events)
        throw budget_exceeded_error("engine: event count overflow");
    }
    traj_.corners_ = corners_;
    return std::move(traj_);
  }

 private:
  struct Candidate {
    double x = 0.0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::interaction;
    std::int64_t a = -1, b = -1;  // fronts (interaction) / front (wall)
    std::size_t idx = 0;          // corner index / wall segment stamp
    bool operator>(const Candidate& other) const {
      if (x != other.x) return x > other.x;
      return seq > other.seq;
    }
  };

  const SimilarityParams& p() const { return cfg_.params; }
  Front& F(std::int64_t id) { return traj_.fronts_[(size_t)id]; }
  const Front& F(std::int64_t id) const { return traj_.fronts_[(size_t)id]; }

  double jitter(std::int64_t id) const {
    const double u = splitmix_unit(cfg_.seed ^ ((std::uint64_t)id * 0xD1B54A32D192ED03ull));
    return std::ldexp(1.0, -(cfg_.nu + 1)) * (1e-3 + 0.998 * u);
  }

  bool alive(std::int64_t id) const {
    return id >= 0 && !std::isfinite(F(id).x_death);
  }

  State wall_state() const { return top_ < 0 ? bottom_ : F(top_).right; }

  void validate_initial() {
    const auto& s = cfg_.initial;
    if (s.states.empty())
      throw invalid_data_error("engine: empty initial data");
    if (s.states.size() != s.positions.size() + 1)
      throw invalid_data_error("engine: initial data shape mismatch");
    for (size_t i = 1; i < s.positions.size(); ++i)
      if (!(s.positions[i] > s.positions[i - 1]))
        throw invalid_data_error("engine: initial positions not increasing");
    for (const State& u : s.states) {
      if (!(u.rho > 0.0)) throw invalid_data_error("engine: initial rho <= 0");
      require_admissible(u, p(), "engine initial data");
    }
    if (cfg_.mode == GeometryMode::ibvp && !s.positions.empty() &&
        s.positions.back() >= 0.0)
      throw invalid_data_error("engine: initial jumps must lie below the wall");
    bottom_ = s.states.front();
    traj_.bottom_ = bottom_;
    if (!s.positions.empty()) {
      traj_.init_lo_ = s.positions.front();
      traj_.init_hi_ = s.positions.back();
    }
  }

  void check_budget_hypothesis() const {
    double tv = 0.0;
    for (size_t i = 0; i + 1 < cfg_.initial.states.size(); ++i)
      tv += abs_sum(cfg_.initial.states[i], cfg_.initial.states[i + 1]);
    double wall_part = 0.0;
    if (cfg_.mode == GeometryMode::ibvp) {
      const auto& poly = *cfg_.wall;
      auto slope_at = [&](int k) {
        return k < poly.k_star ? std::tan(poly.theta[k]) : poly.far_slope;
      };
      wall_part = std::abs(slope_at(0));
      for (int k = 1; k <= poly.k_star; ++k)
        wall_part += std::abs(slope_at(k) - slope_at(k - 1));
    }
    if (tv + wall_part >= cfg_.budget_epsilon)
      throw invalid_data_error("engine: smallness budget exceeded (initial variation plus wall turning)");
  }

  // ---- linked-list plumbing ----------------------------------------------

  // Install a chain of fronts spanning exactly [below, above] between the
  // (possibly absent) neighbors prev and next; the end states are snapped
  // so adjacency stays exact after dropped zero waves.
  std::vector<std::int64_t> install_chain(std::vector<FrontSpec> specs,
                                          const State& below, const State& above,
                                          double x, double y,
                                          const std::vector<int>& orders,
                                          std::int64_t before, std::int64_t after) {
    bool np_fallback = false;
    if (specs.empty()) {
      const double mismatch = sup_norm(below, above);
      if (mismatch >= kTinyJump) {
        FrontSpec np;
        np.family = kNonPhysical;
        np.strength = mismatch;
        np.left = below;
        np.right = above;
        np.speed = traj_.lambda_hat_;
        specs.push_back(np);
        np_fallback = true;
      }
    } else {
      specs.front().left = below;
      specs.back().right = above;
    }
    std::vector<std::int64_t> ids;
    ids.reserve(specs.size());
    for (size_t i = 0; i < specs.size(); ++i) {
      Front f;
      f.id = (std::int64_t)traj_.fronts_.size();
      f.family = specs[i].family;
      f.strength = specs[i].strength;
      f.left = specs[i].left;
      f.right = specs[i].right;
      f.nominal_speed = specs[i].speed;
      f.speed = f.physical() ? specs[i].speed + jitter(f.id) : specs[i].speed;
      f.is_shock = specs[i].is_shock;
      f.order = np_fallback ? cfg_.nu + 1
                            : (orders.empty() ? 1 : orders[std::min(i, orders.size() - 1)]);
      f.x_born = x;
      f.y_born = y;
      traj_.fronts_.push_back(f);
      next_.push_back(-1);
      prev_.push_back(-1);
      ids.push_back(f.id);
      if (!f.physical()) np_total_ += std::abs(f.strength);
      if (traj_.fronts_.size() > cfg_.max_fronts)
        throw budget_exceeded_error("engine: front count overflow");
    }
    // Link the chain between before and after.
    std::int64_t prev = before;
    for (auto id : ids) {
      (prev >= 0 ? next_[(size_t)prev] : head_) = id;
      prev_[(size_t)id] = prev;
      prev = id;
    }
    (prev >= 0 ? next_[(size_t)prev] : head_) = after;
    if (after >= 0) prev_[(size_t)after] = prev;
    if (after < 0) top_ = prev;  // chain ends at the top

    // Physical index: insert in order at the recorded slot.
    size_t at = phys_insert_at_;
    for (auto id : ids) {
      if (F(id).physical()) {
        phys_.insert(phys_.begin() + (long)at, id);
        ++at;
      }
    }
    return ids;
  }

  void kill(std::int64_t id, double x) {
    Front& f = F(id);
    f.x_death = x;
    if (!f.physical()) {
      np_total_ -= std::abs(f.strength);
    } else {
      const auto it = std::find(phys_.begin(), phys_.end(), id);
      phys_insert_at_ = (size_t)(it - phys_.begin());
      phys_.erase(it);
    }
    // unlink
    const std::int64_t pr = prev_[(size_t)id], nx = next_[(size_t)id];
    (pr >= 0 ? next_[(size_t)pr] : head_) = nx;
    if (nx >= 0)
      prev_[(size_t)nx] = pr;
    else
      top_ = pr;
  }

  // Where a new physical front between prev/next would sit in phys_.
  size_t phys_slot_after(std::int64_t before) const {
    if (before < 0) return 0;
    // walk down from 'before' to the nearest physical front
    std::int64_t cur = before;
    while (cur >= 0 && !F(cur).physical()) cur = prev_[(size_t)cur];
    if (cur < 0) return 0;
    const auto it = std::find(phys_.begin(), phys_.end(), cur);
    return (size_t)(it - phys_.begin()) + 1;
  }

  // ---- glimm bookkeeping ---------------------------------------------------

  double recompute_glimm() {
    std::vector<const Front*> fs;
    fs.reserve(phys_.size());
    for (auto id : phys_) fs.push_back(&F(id));
    glimm_total_ = glimm_of(fs, vc_remaining_, traj_.weights_).total;
    return glimm_total_;
  }

  void track_np_max() {
    traj_.max_np_running_ = std::max(traj_.max_np_running_, np_total_);
  }

  // ---- candidates ----------------------------------------------------------

  void push_interaction(std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) return;
    const Front& fa = F(a);
    const Front& fb = F(b);
    if (!(fa.speed > fb.speed)) return;
    // line intersection of y = y0 + s (x - x0)
    const double ca = fa.y_born - fa.speed * fa.x_born;
    const double cb = fb.y_born - fb.speed * fb.x_born;
    const double xh = (ca - cb) / (fb.speed - fa.speed);
    if (xh <= x_cur_ || xh >= cfg_.x_end) return;
    pq_.push({xh, seq_++, EventKind::interaction, a, b, 0});
  }

  void push_wall_candidate() {
    if (cfg_.mode != GeometryMode::ibvp || top_ < 0) return;
    if (top_ == wall_pushed_top_ && segment_ == wall_pushed_segment_) return;
    wall_pushed_top_ = top_;
    wall_pushed_segment_ = segment_;
    const Front& f = F(top_);
    const double ws = std::tan(cfg_.wall->theta_at(x_cur_));
    if (!(f.speed > ws)) return;
    double gap = cfg_.wall->b_at(x_cur_) - f.y_at(x_cur_);
    if (gap < 0.0) gap = 0.0;
    const double xh = x_cur_ + gap / (f.speed - ws);
    const double corner_x = next_corner_ < corners_.size()
                                ? corners_[next_corner_].first
                                : std::numeric_limits<double>::infinity();
    if (xh <= x_cur_ || xh >= cfg_.x_end || xh >= corner_x) return;
    pq_.push({xh, seq_++, EventKind::boundary_hit, top_, -1, segment_});
  }

  void push_corner_candidate() {
    if (next_corner_ >= corners_.size()) return;
    const double xc = corners_[next_corner_].first;
    if (xc >= cfg_.x_end) return;
    pq_.push({xc, seq_++, EventKind::corner, -1, -1, next_corner_});
  }

  bool candidate_valid(const Candidate& c) const {
    switch (c.kind) {
      case EventKind::interaction:
        return alive(c.a) && alive(c.b) && next_[(size_t)c.a] == c.b;
      case EventKind::boundary_hit:
        return alive(c.a) && c.a == top_ && c.idx == segment_;
      case EventKind::corner:
        return c.idx == next_corner_;
    }
    return false;
  }

  // ---- initialization ------------------------------------------------------

  void initialize() {
    const auto& s = cfg_.initial;
    for (size_t j = 0; j < s.positions.size(); ++j) {
      const State& ul = s.states[j];
      const State& ur = s.states[j + 1];
      if (abs_sum(ul, ur) < kTinyJump) continue;
      const RiemannFan fan = solve_interior(ul, ur, p());
      phys_insert_at_ = phys_.size();
      install_chain(ars_fronts(fan, cfg_.nu, p()), ul, ur, 0.0, s.positions[j],
                    {1}, top_, -1);
    }

    if (cfg_.mode == GeometryMode::ibvp) {
      corners_ = corner_schedule(*cfg_.wall);
      for (const auto& [x, w] : corners_) vc_remaining_ += std::abs(w);
      // Leading edge: align the wall state with the first segment's slip
      // condition. Runs as an x = 0 corner event whenever the wall starts
      // at an angle or the data violates the horizontal condition.
      const double theta0 = cfg_.wall->theta_at(0.0);
      const bool corner0 = !corners_.empty() && corners_.front().first == 0.0;
      const double slip = std::abs(slip_residual(wall_state(), theta0, p()));
      if (corner0 || slip > 1e-13) {
        EventRecord ev;
        ev.x = 0.0;
        ev.y = 0.0;
        ev.kind = EventKind::corner;
        ev.glimm_before = recompute_glimm();
        const State utop = wall_state();
        const BoundaryFan fan = solve_boundary(utop, theta0, p());
        phys_insert_at_ = phys_.size();
        auto ids = install_chain(ars_fronts(fan, cfg_.nu, p()), utop,
                                 fan.wall_state, 0.0, 0.0, {1}, top_, -1);
        for (auto id : ids) {
          ev.out_ids.push_back(id);
          ev.out_strengths.push_back(F(id).strength);
        }
        if (corner0) {
          vc_remaining_ -= std::abs(corners_.front().second);
          next_corner_ = 1;
          ++segment_;
        }
        ev.glimm_after = recompute_glimm();
        traj_.events_.push_back(std::move(ev));
      }
    }
    traj_.glimm_initial_ = recompute_glimm();
    track_np_max();

    // Seed the queue: adjacent pairs, the wall, the next corner.
    for (std::int64_t id = head_; id >= 0; id = next_[(size_t)id])
      if (next_[(size_t)id] >= 0) push_interaction(id, next_[(size_t)id]);
    push_wall_candidate();
    push_corner_candidate();
  }

  // ---- events ---------------------------------------------------------------

  bool step() {
    Candidate c;
    bool found = false;
    while (!pq_.empty()) {
      c = pq_.top();
      pq_.pop();
      if (candidate_valid(c)) {
        found = true;
        break;
      }
    }
    if (!found || c.x >= cfg_.x_end) {
      x_cur_ = cfg_.x_end;
      return false;
    }
    // Generic position: no second valid event may share this x.
    while (!pq_.empty() && pq_.top().x == c.x) {
      const Candidate other = pq_.top();
      pq_.pop();
      if (candidate_valid(other))
        throw std::runtime_error(
            "engine: generic position violated (two events share an x)");
    }

    switch (c.kind) {
      case EventKind::interaction:
        process_interaction(c.x, c.a, c.b);
        break;
      case EventKind::boundary_hit:
        process_boundary_hit(c.x, c.a);
        break;
      case EventKind::corner:
        process_corner();
        break;
    }
    x_cur_ = c.x;
    track_np_max();
    check_glimm_budget();
    return true;
  }

  FrontSpec spec_of(const Front& f) const {
    return {f.family, f.strength, f.left, f.right, f.nominal_speed, f.is_shock};
  }

  void finish_event(EventRecord ev, const std::vector<std::int64_t>& ids,
                    std::int64_t before, std::int64_t after) {
    for (auto id : ids) {
      ev.out_ids.push_back(id);
      ev.out_strengths.push_back(F(id).strength);
    }
    ev.glimm_after = recompute_glimm();
    if (std::getenv("HYPERFRONT_DEBUG")) {
      std::fprintf(stderr, "ev %zu x=%.12g kind=%d in=[", traj_.events_.size(), ev.x, (int)ev.kind);
      for (size_t i = 0; i < ev.in_ids.size(); ++i)
        std::fprintf(stderr, "%lld(f%d,s%.3g) ", (long long)ev.in_ids[i], F(ev.in_ids[i]).family, ev.in_strengths[i]);
      std::fprintf(stderr, "] out=[");
      for (auto id : ev.out_ids)
        std::fprintf(stderr, "%lld(f%d,s%.3g,v%.6g) ", (long long)id, F(id).family, F(id).strength, F(id).speed);
      std::fprintf(stderr, "]\n");
    }
    traj_.events_.push_back(std::move(ev));
    // fresh adjacencies
    if (ids.empty()) {
      push_interaction(before, after);
    } else {
      push_interaction(before, ids.front());
      for (size_t i = 0; i + 1 < ids.size(); ++i)
        push_interaction(ids[i], ids[i + 1]);
      push_interaction(ids.back(), after);
    }
    push_wall_candidate();
  }

  void process_interaction(double x_e, std::int64_t a, std::int64_t b) {
    Front& fa = F(a);
    Front& fb = F(b);
    EventRecord ev;
    ev.x = x_e;
    ev.y = 0.5 * (fa.y_at(x_e) + fb.y_at(x_e));
    ev.kind = EventKind::interaction;
    ev.in_ids = {fa.id, fb.id};
    ev.in_strengths = {fa.strength, fb.strength};
    ev.glimm_before = glimm_total_;

    const double rho_threshold = std::ldexp(1.0, -cfg_.nu);
    const bool ars = fa.physical() && fb.physical() &&
                     std::max(fa.order, fb.order) < cfg_.nu &&
                     std::abs(fa.strength * fb.strength) > rho_threshold;
    ev.used_srs = !ars;

    std::vector<FrontSpec> specs;
    std::vector<int> orders;
    if (ars) {
      const RiemannFan fan = solve_interior(fa.left, fb.right, p());
      specs = ars_fronts(fan, cfg_.nu, p());
      for (const auto& s : specs) orders.push_back(order_ars(fa, fb, s.family));
    } else {
      specs = srs_fronts(spec_of(fa), spec_of(fb), p(), traj_.lambda_hat_);
      for (const auto& s : specs) orders.push_back(order_srs(fa, fb, s.family));
    }

    const State below = fa.left;
    const State above = fb.right;
    const std::int64_t before = prev_[(size_t)a];
    const std::int64_t after = next_[(size_t)b];
    kill(a, x_e);
    kill(b, x_e);
    phys_insert_at_ = phys_slot_after(before);
    auto ids = install_chain(std::move(specs), below, above, x_e, ev.y, orders,
                             before, after);
    finish_event(std::move(ev), ids, before, after);
  }

  int order_ars(const Front& fa, const Front& fb, int family) const {
    if (family == kNonPhysical) return cfg_.nu + 1;  // fallback mismatch front
    if (fa.family == fb.family)
      return family == fa.family ? std::min(fa.order, fb.order)
                                 : std::max(fa.order, fb.order) + 1;
    if (family == fa.family) return fa.order;
    if (family == fb.family) return fb.order;
    return std::max(fa.order, fb.order) + 1;
  }

  int order_srs(const Front& fa, const Front& fb, int family) const {
    if (family == kNonPhysical) return cfg_.nu + 1;
    if (!fa.physical()) return fb.order;
    if (fa.family == fb.family) return std::min(fa.order, fb.order);
    return family == fa.family ? fa.order : fb.order;
  }

  void process_boundary_hit(double x_e, std::int64_t fid) {
    Front& f = F(fid);
    if (f.family == 1)
      throw std::runtime_error("engine: family-1 front reached the wall");
    EventRecord ev;
    ev.x = x_e;
    ev.y = cfg_.wall->b_at(x_e);
    ev.kind = EventKind::boundary_hit;
    ev.in_ids = {f.id};
    ev.in_strengths = {f.strength};
    ev.glimm_before = glimm_total_;

    const std::int64_t before = prev_[(size_t)fid];
    if (!f.physical()) {
      // Non-physical fronts are absorbed: the wall condition is relaxed by
      // the absorbed strength (O(2^-nu) in total) and re-imposed exactly at
      // the next physical reflection or corner. Reflecting them would breed
      // an unbounded cascade of micro-fronts.
      kill(fid, x_e);
      finish_event(std::move(ev), {}, before, -1);
      return;
    }

    const double theta = cfg_.wall->theta_at(x_e);
    const State below = f.left;
    const BoundaryFan fan = solve_boundary(below, theta, p());
    const int order = std::min(f.order, cfg_.nu);
    kill(fid, x_e);
    phys_insert_at_ = phys_.size();
    auto ids = install_chain(ars_fronts(fan, cfg_.nu, p()), below,
                             fan.wall_state, x_e, ev.y, {order}, before, -1);
    finish_event(std::move(ev), ids, before, -1);
  }

  void process_corner() {
    const auto [xc, w] = corners_[next_corner_];
    EventRecord ev;
    ev.x = xc;
    ev.y = cfg_.wall->b_at(xc);
    ev.kind = EventKind::corner;
    ev.glimm_before = glimm_total_;

    const State utop = wall_state();
    const double theta = cfg_.wall->theta_at(xc);
    const BoundaryFan fan = solve_boundary(utop, theta, p());
    const std::int64_t before = top_;
    phys_insert_at_ = phys_.size();
    auto ids = install_chain(ars_fronts(fan, cfg_.nu, p()), utop,
                             fan.wall_state, xc, ev.y, {1}, before, -1);
    vc_remaining_ -= std::abs(w);
    ++next_corner_;
    ++segment_;
    push_corner_candidate();
    finish_event(std::move(ev), ids, before, -1);
  }

  void check_glimm_budget() const {
    if (glimm_total_ > 2.0 * traj_.glimm_initial_ + 1e-9)
      throw budget_exceeded_error("engine: Glimm functional doubled its initial value");
  }

  EngineConfig cfg_;
  Trajectory traj_;
  // intrusive order: prev_/next_ indexed by front id, head_ = bottom front
  std::vector<std::int64_t> next_, prev_;
  std::int64_t head_ = -1, top_ = -1;
  std::vector<std::int64_t> phys_;  // physical fronts, bottom to top
  size_t phys_insert_at_ = 0;
  std::int64_t wall_pushed_top_ = -2;
  size_t wall_pushed_segment_ = (size_t)-1;
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> pq_;
  std::uint64_t seq_ = 0;
  std::vector<std::pair<double, double>> corners_;
  size_t next_corner_ = 0;
  size_t segment_ = 0;
  double vc_remaining_ = 0.0;
  double np_total_ = 0.0;
  double glimm_total_ = 0.0;
  double x_cur_ = 0.0;
  State bottom_;
};

Trajectory run(const EngineConfig& cfg) { return EngineImpl(cfg).run(); }

std::vector<const Front*> Trajectory::alive_at(double x) const {
  std::vector<const Front*> out;
  for (const Front& f : fronts_)
    if (f.alive_at(x)) out.push_back(&f);
  std::sort(out.begin(), out.end(), [x](const Front* a, const Front* b) {
    const double ya = a->y_at(x), yb = b->y_at(x);
    if (ya != yb) return ya < yb;
    return a->id < b->id;
  });
  return out;
}

State Trajectory::state_at(double x, double y) const {
  State value = bottom_;
  for (const Front* f : alive_at(x)) {
    if (f->y_at(x) > y) break;
    value = f->right;
  }
  return value;
}

double Trajectory::wall_at(double x) const {
  if (config_.mode != GeometryMode::ibvp) return kInf;
  return config_.wall->b_at(x);
}

double Trajectory::wall_angle_at(double x) const {
  if (config_.mode != GeometryMode::ibvp) return 0.0;
  return config_.wall->theta_at(x);
}

double Trajectory::support_floor(double x) const {
  return init_lo_ - lambda_hat_ * x - 1.0;
}

bool Trajectory::has_event_at(double x) const {
  for (const EventRecord& e : events_)
    if (e.x == x) return true;
  return false;
}

GlimmSnapshot Trajectory::glimm_at(double x) const {
  double vc = 0.0;
  for (const auto& [cx, w] : corners_)
    if (cx > x) vc += std::abs(w);
  return glimm_of(alive_at(x), vc, weights_);
}

double Trajectory::max_rarefaction_strength() const {
  double m = 0.0;
  for (const Front& f : fronts_)
    if (f.physical() && f.strength > 0.0) m = std::max(m, f.strength);
  return m;
}

double Trajectory::total_np_strength(double x) const {
  double s = 0.0;
  for (const Front& f : fronts_)
    if (f.alive_at(x) && !f.physical()) s += std::abs(f.strength);
  return s;
}

double Trajectory::max_total_np_strength() const { return max_np_running_; }

}  // namespace hyperfront
