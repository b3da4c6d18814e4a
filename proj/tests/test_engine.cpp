#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hyperfront/engine.hpp"
#include "hyperfront/profile.hpp"

using namespace hyperfront;

namespace {

SimilarityParams params(double tau) { return {1.4, 0.5, tau, 0.1}; }

BoundarySpec straight_wall(double slope) {
  BoundarySpec s;
  s.kind = BoundarySpec::Kind::piecewise_linear;
  s.breakpoints = {0.0};
  s.slopes = {slope};
  return s;
}

EngineConfig ibvp_config(double tau, const BoundarySpec& wall, double h,
                         const SampledData& data, double x_end, int nu = 12) {
  EngineConfig ec;
  ec.params = params(tau);
  ec.mode = GeometryMode::ibvp;
  ec.wall = build_polyline(wall, h);
  ec.initial = data;
  ec.nu = nu;
  ec.x_end = x_end;
  ec.seed = 7;
  return ec;
}

EngineConfig cauchy_config(double tau, const SampledData& data, double x_end,
                           int nu = 12) {
  EngineConfig ec;
  ec.params = params(tau);
  ec.mode = GeometryMode::cauchy;
  ec.initial = data;
  ec.nu = nu;
  ec.x_end = x_end;
  ec.seed = 7;
  return ec;
}

SampledData background_data() {
  SampledData d;
  d.states = {kBackground};
  return d;
}

}  // namespace

TEST_CASE("sampling: constant and jump data pass through") {
  InitialData cd;
  cd.kind = InitialData::Kind::constant;
  const SampledData sc = sample_initial_data(cd, 12);
  CHECK(sc.positions.empty());
  CHECK(sc.states.size() == 1);

  InitialData jd;
  jd.kind = InitialData::Kind::jumps;
  jd.positions = {-1.0};
  jd.states = {{1.0, 0.0}, {1.01, 0.02}};
  const SampledData sj = sample_initial_data(jd, 12);
  CHECK(sj.positions == jd.positions);
  CHECK(sj.states.size() == 2);
  CHECK(sj.states[1] == jd.states[1]);
}

TEST_CASE("sampling: bump meets the L1 and TV bounds") {
  InitialData bd;
  bd.kind = InitialData::Kind::bump;
  bd.center = -0.6;
  bd.width = 0.5;
  bd.amp_rho = 0.003;
  bd.amp_v = 0.007;
  const int nu = 12;
  const SampledData s = sample_initial_data(bd, nu);

  auto phi = [&](double y) {
    if (std::abs(y - bd.center) >= 0.5 * bd.width) return 0.0;
    return 0.5 * (1.0 + std::cos(2.0 * M_PI * (y - bd.center) / bd.width));
  };
  auto exact = [&](double y) -> State {
    const double w = phi(y);
    return {1.0 + bd.amp_rho * w, bd.amp_v * w};
  };
  auto sampled = [&](double y) -> State {
    size_t i = 0;
    while (i < s.positions.size() && y >= s.positions[i]) ++i;
    return s.states[i];
  };
  // quadrature of the L1 error over the support
  const int q = 200000;
  const double lo = bd.center - bd.width, hi = bd.center + bd.width;
  double acc = 0.0;
  for (int i = 0; i < q; ++i) {
    const double y = lo + (hi - lo) * (i + 0.5) / q;
    acc += abs_sum(exact(y), sampled(y)) * (hi - lo) / q;
  }
  CHECK(acc < std::ldexp(1.0, -nu));
  // TV of the sampled data never exceeds the bump's
  double tv = 0.0;
  for (size_t i = 0; i + 1 < s.states.size(); ++i)
    tv += abs_sum(s.states[i], s.states[i + 1]);
  CHECK(tv <= 2.0 * (bd.amp_rho + bd.amp_v) + 1e-15);
}

TEST_CASE("background data with a matching straight wall: zero events") {
  const Trajectory traj =
      run(ibvp_config(0.1, straight_wall(0.0), 0.05, background_data(), 2.0));
  CHECK(traj.events().empty());
  CHECK(traj.fronts().empty());
  const Profile prof = profile_of(traj, 1.5);
  CHECK(prof.breaks.empty());
  CHECK(prof.states.size() == 1);
  CHECK(prof.states[0] == kBackground);
}

TEST_CASE("single compressive corner emits one shock and nothing else") {
  for (double tau : {0.0, 0.1}) {
    const BoundarySpec wall = straight_wall(-std::tan(0.05));
    const Trajectory traj =
        run(ibvp_config(tau, wall, 0.05, background_data(), 2.0));
    REQUIRE(traj.events().size() == 1);
    CHECK(traj.events()[0].kind == EventKind::corner);
    CHECK(traj.events()[0].x == 0.0);
    REQUIRE(traj.fronts().size() == 1);
    const Front& f = traj.fronts()[0];
    CHECK(f.family == 1);
    CHECK(f.is_shock);
    CHECK(f.order == 1);
    // strength matches the boundary Riemann solve directly
    const BoundaryFan fan = solve_boundary(kBackground, -0.05, params(tau));
    CHECK(f.strength == doctest::Approx(fan.alpha1).epsilon(1e-12));
    // wall state satisfies the slip condition for the wall angle
    CHECK(std::abs(slip_residual(f.right, -0.05, params(tau))) <= 1e-12);
  }
}

TEST_CASE("two approaching shocks merge into the exact two-wave fan") {
  const SimilarityParams p = params(0.1);
  const State u0 = kBackground;
  const State u1 = wave_curve(1, -0.04, u0, p).state;
  const State u2 = wave_curve(1, -0.04, u1, p).state;
  SampledData data;
  data.positions = {-1.0, -0.98};
  data.states = {u0, u1, u2};
  const Trajectory traj = run(cauchy_config(0.1, data, 2.0));

  REQUIRE(traj.events().size() >= 1);
  const EventRecord& ev = traj.events()[0];
  CHECK(ev.kind == EventKind::interaction);
  CHECK(!ev.used_srs);  // |a b| = 1.6e-3 > 2^-12
  // outgoing strengths match the direct interior solve of the outer states
  const RiemannFan direct = solve_interior(u0, u2, p);
  REQUIRE(ev.out_ids.size() == 2);
  const Front& o1 = traj.fronts()[(size_t)ev.out_ids[0]];
  const Front& o2 = traj.fronts()[(size_t)ev.out_ids[1]];
  CHECK(o1.family == 1);
  CHECK(o2.family == 2);
  CHECK(o1.strength == doctest::Approx(direct.alpha1).epsilon(1e-9));
  CHECK(o2.strength == doctest::Approx(direct.alpha2).epsilon(1e-9));
  // orders: same-family merge keeps order 1, the new 2-wave is order 2
  CHECK(o1.order == 1);
  CHECK(o2.order == 2);
  // the accurate-solver event must not raise the Glimm total
  CHECK(ev.glimm_after <= ev.glimm_before + 1e-12);
}

TEST_CASE("a chain of accurate-solver mergers keeps the Glimm total falling") {
  const SimilarityParams p = params(0.1);
  SampledData data;
  data.states.push_back(kBackground);
  State cur = kBackground;
  for (int i = 0; i < 3; ++i) {
    cur = wave_curve(1, -0.04, cur, p).state;
    data.positions.push_back(-1.0 + 0.02 * i);
    data.states.push_back(cur);
  }
  const Trajectory traj = run(cauchy_config(0.1, data, 4.0));
  size_t ars_events = 0;
  for (const EventRecord& ev : traj.events()) {
    if (ev.kind != EventKind::interaction) continue;
    CHECK(ev.glimm_after <= ev.glimm_before + 1e-12);
    if (!ev.used_srs) ++ars_events;
  }
  CHECK(ars_events >= 2);
}

TEST_CASE("family-2 front reflects off the wall as a family-1 front") {
  const SimilarityParams p = params(0.1);
  const State top = wave_curve(2, -0.03, kBackground, p).state;
  SampledData data;
  data.positions = {-0.5};
  data.states = {kBackground, top};
  const Trajectory traj =
      run(ibvp_config(0.1, straight_wall(0.0), 0.05, data, 2.0));

  bool saw_boundary = false;
  for (const EventRecord& ev : traj.events()) {
    if (ev.kind != EventKind::boundary_hit) continue;
    saw_boundary = true;
    REQUIRE(!ev.in_ids.empty());
    const Front& in = traj.fronts()[(size_t)ev.in_ids[0]];
    CHECK(in.family != 1);
    for (auto id : ev.out_ids) CHECK(traj.fronts()[(size_t)id].family == 1);
  }
  CHECK(saw_boundary);
  // final wall state satisfies the slip condition up to the absorbed
  // non-physical strength
  const auto alive = traj.alive_at(1.9);
  REQUIRE(!alive.empty());
  CHECK(std::abs(slip_residual(alive.back()->right, 0.0, p)) <=
        1e-12 + traj.max_total_np_strength());
}

TEST_CASE("glimm snapshot: single shock run") {
  const BoundarySpec wall = straight_wall(-std::tan(0.05));
  const Trajectory traj =
      run(ibvp_config(0.0, wall, 0.05, background_data(), 2.0));
  const GlimmSnapshot g = traj.glimm_at(1.0);
  CHECK(g.v1 == doctest::Approx(std::abs(traj.fronts()[0].strength)).epsilon(1e-14));
  CHECK(g.v2 == 0.0);
  CHECK(g.q == 0.0);
  CHECK(g.vc == 0.0);
}

TEST_CASE("glimm total never increases across interaction events") {
  // a busier run: bump data over a two-slope wedge
  InitialData bd;
  bd.kind = InitialData::Kind::bump;
  bd.center = -0.6;
  bd.width = 0.5;
  bd.amp_rho = 0.003;
  bd.amp_v = 0.007;
  BoundarySpec wall;
  wall.kind = BoundarySpec::Kind::piecewise_linear;
  wall.breakpoints = {0.0, 1.0};
  wall.slopes = {-0.05, -0.07};
  wall.far_slope = -0.07;
  for (double tau : {0.0, 0.1}) {
    const Trajectory traj = run(
        ibvp_config(tau, wall, 0.05, sample_initial_data(bd, 12), 2.0));
    CHECK(traj.events().size() > 10);
    for (const EventRecord& ev : traj.events()) {
      if (ev.kind == EventKind::interaction)
        CHECK(ev.glimm_after <= ev.glimm_before + 1e-12);
    }
  }
}

TEST_CASE("scheme bounds: rarefaction cap, NP totals, order bounds") {
  InitialData bd;
  bd.kind = InitialData::Kind::bump;
  bd.center = -0.6;
  bd.width = 0.5;
  bd.amp_rho = 0.004;
  bd.amp_v = 0.008;
  const int nu = 8;  // low cap to exercise SRS and the NP machinery
  const BoundarySpec wall = straight_wall(-std::tan(0.04));
  EngineConfig ec = ibvp_config(0.1, wall, 0.05, sample_initial_data(bd, nu), 2.0, nu);
  const Trajectory traj = run(ec);
  CHECK(traj.max_rarefaction_strength() <= 1.0 / nu + 1e-15);
  CHECK(traj.max_total_np_strength() <= 8.0 * std::ldexp(1.0, -nu));
  for (const Front& f : traj.fronts()) {
    if (f.physical()) {
      CHECK(f.order <= nu);
      CHECK(std::abs(f.speed - f.nominal_speed) < std::ldexp(1.0, -nu));
    } else {
      CHECK(f.order == nu + 1);
      CHECK(f.speed == traj.lambda_hat());
    }
  }
}

TEST_CASE("identical configs produce bit-identical event logs") {
  InitialData bd;
  bd.kind = InitialData::Kind::bump;
  bd.center = -0.6;
  bd.width = 0.5;
  bd.amp_rho = 0.003;
  bd.amp_v = 0.007;
  const BoundarySpec wall = straight_wall(-std::tan(0.05));
  EngineConfig ec = ibvp_config(0.1, wall, 0.05, sample_initial_data(bd, 12), 2.0);
  const Trajectory a = run(ec);
  const Trajectory b = run(ec);
  REQUIRE(a.events().size() == b.events().size());
  for (size_t i = 0; i < a.events().size(); ++i) {
    CHECK(a.events()[i].x == b.events()[i].x);
    CHECK(a.events()[i].in_ids == b.events()[i].in_ids);
    CHECK(a.events()[i].out_strengths == b.events()[i].out_strengths);
    CHECK(a.events()[i].glimm_after == b.events()[i].glimm_after);
  }
  REQUIRE(a.fronts().size() == b.fronts().size());
  for (size_t i = 0; i < a.fronts().size(); ++i)
    CHECK(a.fronts()[i].speed == b.fronts()[i].speed);
}

TEST_CASE("cauchy mode: compact data stays inside the wave cone") {
  InitialData bd;
  bd.kind = InitialData::Kind::bump;
  bd.center = 0.0;
  bd.width = 0.6;
  bd.amp_rho = 0.004;
  bd.amp_v = 0.006;
  const Trajectory traj = run(cauchy_config(0.1, sample_initial_data(bd, 12), 1.5));
  const double x = 1.4;
  for (const Front* f : traj.alive_at(x)) {
    CHECK(f->y_at(x) >= -0.3 - traj.lambda_hat() * x - 1e-9);
    CHECK(f->y_at(x) <= 0.3 + traj.lambda_hat() * x + 1e-9);
  }
  const Profile prof = profile_of(traj, x);
  CHECK(prof.states.front() == kBackground);
  CHECK(prof.states.back() == kBackground);
}

TEST_CASE("state queries at a point match the profile") {
  const BoundarySpec wall = straight_wall(-std::tan(0.05));
  const Trajectory traj =
      run(ibvp_config(0.0, wall, 0.05, background_data(), 2.0));
  // one shock from the leading edge; below it background, above the wall state
  const Front& f = traj.fronts()[0];
  const double x = 1.3;
  const double yf = f.y_at(x);
  CHECK(traj.state_at(x, yf - 0.1) == kBackground);
  CHECK(traj.state_at(x, yf + 0.01) == f.right);
  CHECK(traj.state_at(x, -50.0) == kBackground);
}

TEST_CASE("profile at x = 0 returns the sampled data") {
  InitialData jd;
  jd.kind = InitialData::Kind::jumps;
  jd.positions = {-1.0, -0.5};
  const SimilarityParams p = params(0.0);
  const State u1 = wave_curve(1, -0.02, kBackground, p).state;
  const State u2 = wave_curve(2, 0.015, u1, p).state;
  jd.states = {kBackground, u1, u2};
  const SampledData data = sample_initial_data(jd, 12);
  const Trajectory traj = run(cauchy_config(0.0, data, 1.0));
  const Profile prof = profile_of(traj, 0.0);
  REQUIRE(prof.breaks.size() == 2);
  CHECK(prof.breaks[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(prof.breaks[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(sup_norm(prof.states[0], kBackground) == 0.0);
  CHECK(sup_norm(prof.states[2], u2) <= 1e-12);
}

TEST_CASE("initial data violating the hypotheses is rejected") {
  SampledData bad;
  bad.positions = {-1.0};
  bad.states = {{1.0, 0.0}, {-0.5, 0.0}};
  CHECK_THROWS_AS(run(cauchy_config(0.0, bad, 1.0)), invalid_data_error);

  // jumps above the wall in ibvp mode
  SampledData above;
  above.positions = {0.5};
  above.states = {kBackground, {1.01, 0.0}};
  CHECK_THROWS_AS(run(ibvp_config(0.0, straight_wall(0.0), 0.05, above, 1.0)),
                  invalid_data_error);

  // smallness budget: many admissible jumps with large total variation
  SampledData big;
  State flip{1.0, 0.08};
  for (int i = 0; i < 8; ++i) {
    big.positions.push_back(-3.0 + 0.2 * i);
  }
  big.states.push_back(kBackground);
  for (int i = 0; i < 8; ++i)
    big.states.push_back(i % 2 == 0 ? flip : kBackground);
  CHECK_THROWS_AS(run(cauchy_config(0.0, big, 1.0)), invalid_data_error);
}

TEST_CASE("corner waves get order one; reflected fronts keep their order") {
  const SimilarityParams p = params(0.1);
  const State top = wave_curve(2, -0.02, kBackground, p).state;
  SampledData data;
  data.positions = {-0.4};
  data.states = {kBackground, top};
  BoundarySpec wall;
  wall.kind = BoundarySpec::Kind::piecewise_linear;
  wall.breakpoints = {0.0, 0.5};
  wall.slopes = {0.0, -0.03};
  wall.far_slope = -0.03;
  const Trajectory traj = run(ibvp_config(0.1, wall, 0.05, data, 2.0));
  for (const EventRecord& ev : traj.events()) {
    if (ev.kind == EventKind::corner)
      for (auto id : ev.out_ids)
        CHECK(traj.fronts()[(size_t)id].order == 1);
    if (ev.kind == EventKind::boundary_hit) {
      REQUIRE(!ev.in_ids.empty());
      const Front& in = traj.fronts()[(size_t)ev.in_ids[0]];
      if (!in.physical()) {
        CHECK(ev.out_ids.empty());  // absorbed
      } else {
        for (auto id : ev.out_ids)
          CHECK(traj.fronts()[(size_t)id].order == std::min(in.order, 12));
      }
    }
  }
}
