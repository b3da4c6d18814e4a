#include "hyperfront/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace hyperfront {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void atomic_write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string join_ids(const std::vector<std::int64_t>& ids) {
  std::string s;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(ids[i]);
  }
  return s;
}

std::string join_nums(const std::vector<double>& vs) {
  std::string s;
  for (size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ';';
    s += format_double(vs[i]);
  }
  return s;
}

const char* kind_name(EventKind k) {
  switch (k) {
    case EventKind::interaction: return "interaction";
    case EventKind::boundary_hit: return "boundary_hit";
    case EventKind::corner: return "corner";
  }
  return "?";
}

std::string events_csv_text(const Trajectory& traj) {
  std::ostringstream out;
  out << "x,y,kind,srs,in_ids,in_strengths,out_ids,out_strengths,"
         "glimm_before,glimm_after\n";
  for (const EventRecord& e : traj.events()) {
    out << format_double(e.x) << ',' << format_double(e.y) << ','
        << kind_name(e.kind) << ',' << (e.used_srs ? 1 : 0) << ','
        << join_ids(e.in_ids) << ',' << join_nums(e.in_strengths) << ','
        << join_ids(e.out_ids) << ',' << join_nums(e.out_strengths) << ','
        << format_double(e.glimm_before) << ',' << format_double(e.glimm_after)
        << '\n';
  }
  return out.str();
}

std::string profiles_csv_text(const Trajectory& traj,
                              const std::vector<double>& xs,
                              const SimilarityParams& p) {
  std::ostringstream out;
  out << "x,interval,y_low,y_high,rho,v,u\n";
  for (double x : xs) {
    const Profile prof = profile_of(traj, x);
    const double wall = traj.wall_at(x);
    for (size_t i = 0; i < prof.states.size(); ++i) {
      const std::string lo = (i == 0) ? "-inf" : format_double(prof.breaks[i - 1]);
      std::string hi;
      if (i < prof.breaks.size())
        hi = format_double(prof.breaks[i]);
      else
        hi = std::isfinite(wall) ? format_double(wall) : "inf";
      out << format_double(x) << ',' << i << ',' << lo << ',' << hi << ','
          << format_double(prof.states[i].rho) << ','
          << format_double(prof.states[i].v) << ','
          << format_double(axial_velocity(prof.states[i], p)) << '\n';
    }
  }
  return out.str();
}

json summary_json_of(const RunConfig& rc, const Trajectory& traj) {
  size_t n_inter = 0, n_bdry = 0, n_corner = 0, n_srs = 0;
  double glimm_max = traj.glimm_initial_total();
  for (const EventRecord& e : traj.events()) {
    switch (e.kind) {
      case EventKind::interaction: ++n_inter; break;
      case EventKind::boundary_hit: ++n_bdry; break;
      case EventKind::corner: ++n_corner; break;
    }
    if (e.used_srs) ++n_srs;
    glimm_max = std::max(glimm_max, e.glimm_after);
  }
  size_t alive_end = 0;
  for (const Front& f : traj.fronts())
    if (!std::isfinite(f.x_death)) ++alive_end;
  json j;
  j["schema_version"] = 1;
  j["regime"] = rc.regime;
  j["tau"] = rc.params.tau;
  j["h"] = rc.h;
  j["nu"] = rc.nu;
  j["seed"] = rc.seed;
  j["x_end"] = rc.x_end;
  j["lambda_hat"] = traj.lambda_hat();
  j["weights"] = {{"k", traj.weights().k},
                  {"k_b", traj.weights().k_b},
                  {"k_c", traj.weights().k_c}};
  j["fronts_created"] = traj.fronts().size();
  j["fronts_alive_end"] = alive_end;
  j["events"] = {{"total", traj.events().size()},
                 {"interaction", n_inter},
                 {"boundary_hit", n_bdry},
                 {"corner", n_corner},
                 {"srs", n_srs}};
  j["max_rarefaction_strength"] = traj.max_rarefaction_strength();
  j["np_total_strength_end"] = traj.total_np_strength(rc.x_end * (1.0 - 1e-12));
  j["np_total_strength_max"] = traj.max_total_np_strength();
  j["glimm"] = {{"initial", traj.glimm_initial_total()},
                {"final", traj.glimm_at(rc.x_end * (1.0 - 1e-12)).total},
                {"max_after_event", glimm_max}};
  return j;
}

int env_threads() {
  if (const char* env = std::getenv("HYPERFRONT_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return (int)std::min(4u, hw ? hw : 1u);
}

template <typename T, typename Fn>
std::vector<T> ordered_parallel_map(size_t n, Fn fn) {
  std::vector<T> out(n);
  const int workers = std::min<int>(max_worker_threads(), (int)n);
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errs(n);
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < n; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errs[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

std::vector<double> default_queries(const RunConfig& rc) {
  return rc.query_xs.empty() ? std::vector<double>{rc.x_end} : rc.query_xs;
}

// ---- wing helpers ------------------------------------------------------

State mirror_state(const State& u) { return {u.rho, -u.v}; }

}  // namespace

SampledData clip_trace_below(const SampledData& d, double y0) {
  SampledData out;
  for (size_t i = 0; i < d.positions.size(); ++i) {
    if (d.positions[i] < y0 - 1e-15) {
      out.positions.push_back(d.positions[i]);
    } else {
      break;
    }
  }
  out.states.assign(d.states.begin(),
                    d.states.begin() + (long)out.positions.size() + 1);
  return out;
}

SampledData clip_trace_above_mirrored(const SampledData& d, double y0) {
  size_t idx = 0;
  while (idx < d.positions.size() && d.positions[idx] <= y0 + 1e-15) ++idx;
  // states s_j on (q_j, q_{j+1}) with s_0 the state at y0+; mirrored order.
  SampledData out;
  const size_t m = d.positions.size() - idx;
  for (size_t j = 0; j < m; ++j)
    out.positions.push_back(-d.positions[d.positions.size() - 1 - j]);
  for (size_t j = 0; j <= m; ++j)
    out.states.push_back(mirror_state(d.states[idx + m - j]));
  return out;
}

// Full-line data from the lower trace and the mirrored upper trace.
SampledData glue_wing_traces(const Profile& lower, const Profile& upper_mirrored) {
  SampledData out;
  out.positions = lower.breaks;
  out.states = lower.states;
  out.positions.push_back(0.0);
  const auto& ub = upper_mirrored.breaks;
  const auto& us = upper_mirrored.states;
  for (size_t j = 0; j < us.size(); ++j)
    out.states.push_back(mirror_state(us[us.size() - 1 - j]));
  for (size_t j = 0; j < ub.size(); ++j)
    out.positions.push_back(-ub[ub.size() - 1 - j]);
  // Guard strict monotonicity around the glue point.
  for (size_t i = 0; i + 1 < out.positions.size();) {
    if (!(out.positions[i + 1] > out.positions[i])) {
      out.positions.erase(out.positions.begin() + i + 1);
      out.states.erase(out.states.begin() + i + 1);
    } else {
      ++i;
    }
  }
  return out;
}

int max_worker_threads() { return env_threads(); }

RunOutput cmd_run(const RunConfig& rc, const std::string& out_dir, bool quiet) {
  const EngineConfig ec = make_engine_config(rc);
  const Trajectory traj = run(ec);

  RunOutput out;
  const fs::path dir(out_dir);
  out.events_csv = (dir / "events.csv").string();
  out.profiles_csv = (dir / "profiles.csv").string();
  out.summary_json = (dir / "summary.json").string();
  atomic_write(out.events_csv, events_csv_text(traj));
  atomic_write(out.profiles_csv,
               profiles_csv_text(traj, default_queries(rc), rc.params));
  atomic_write(out.summary_json, summary_json_of(rc, traj).dump(2) + "\n");
  out.n_events = traj.events().size();
  out.max_rarefaction = traj.max_rarefaction_strength();
  out.max_total_np = traj.max_total_np_strength();
  if (!quiet)
    std::fprintf(stderr, "run: %zu events, %zu fronts, outputs in %s\n",
                 traj.events().size(), traj.fronts().size(), out_dir.c_str());
  return out;
}

std::vector<CompareRow> compare_rows(const RunConfig& rc) {
  if (!(rc.params.tau > 0.0) || rc.regime != "scaled")
    throw config_error("compare: needs the scaled regime with tau > 0");
  const RunConfig rc0 = with_tau(rc, 0.0);
  EngineConfig ec_tau = make_engine_config(rc);
  EngineConfig ec_0 = make_engine_config(rc0);
  ec_0.initial = ec_tau.initial;  // shared sampled data by construction
  const Trajectory traj_tau = run(ec_tau);
  const Trajectory traj_0 = run(ec_0);

  std::vector<CompareRow> rows;
  for (double x : default_queries(rc)) {
    CompareRow row;
    row.x = x;
    const Profile p_tau = profile_of(traj_tau, x);
    const Profile p_0 = profile_of(traj_0, x);
    const double upper = std::min(traj_tau.wall_at(x), traj_0.wall_at(x));
    row.l1_rho_v = l1_distance(p_tau, p_0, upper);
    row.l1_u = l1_distance_scalar(reconstruct_u(p_tau, rc.params),
                                  reconstruct_u(p_0, rc0.params), upper);
    row.l1_total = row.l1_rho_v + row.l1_u;
    row.tv_tau = total_variation(p_tau);
    row.tv_0 = total_variation(p_0);
    row.glimm_tau = traj_tau.glimm_at(x).total;
    row.glimm_0 = traj_0.glimm_at(x).total;
    rows.push_back(row);
  }
  return rows;
}

CompareOutput cmd_compare(const RunConfig& rc, const std::string& out_dir,
                          bool quiet) {
  CompareOutput out;
  out.rows = compare_rows(rc);
  std::ostringstream csv;
  csv << "x,l1_rho_v,l1_u,l1_total,tv_tau,tv_0,glimm_tau,glimm_0\n";
  for (const CompareRow& r : out.rows) {
    csv << format_double(r.x) << ',' << format_double(r.l1_rho_v) << ','
        << format_double(r.l1_u) << ',' << format_double(r.l1_total) << ','
        << format_double(r.tv_tau) << ',' << format_double(r.tv_0) << ','
        << format_double(r.glimm_tau) << ',' << format_double(r.glimm_0) << '\n';
  }
  out.comparison_csv = (fs::path(out_dir) / "comparison.csv").string();
  atomic_write(out.comparison_csv, csv.str());
  if (!quiet)
    std::fprintf(stderr, "compare: %zu query points -> %s\n", out.rows.size(),
                 out.comparison_csv.c_str());
  return out;
}

SweepOutput cmd_sweep(const RunConfig& rc, const std::string& out_dir,
                      bool quiet) {
  SweepOutput out;
  const fs::path dir(out_dir);
  out.sweep_csv = (dir / "sweep.csv").string();
  out.slopes_json = (dir / "slopes.json").string();

  if (!rc.synthetic_pairs.empty()) {
    // Pass-through mode: fit supplied (tau, error) pairs directly.
    out.synthetic = true;
    out.synthetic_fit = fit_rate(rc.synthetic_pairs);
    std::ostringstream csv;
    csv << "tau,error\n";
    for (const auto& [t, e] : rc.synthetic_pairs)
      csv << format_double(t) << ',' << format_double(e) << '\n';
    atomic_write(out.sweep_csv, csv.str());
    json j;
    j["synthetic"] = true;
    j["slope"] = out.synthetic_fit.slope;
    j["intercept"] = out.synthetic_fit.intercept;
    j["residual"] = out.synthetic_fit.residual;
    atomic_write(out.slopes_json, j.dump(2) + "\n");
    return out;
  }

  if (rc.sweep_taus.size() < 3)
    throw config_error("sweep: need at least 3 tau values");
  for (double t : rc.sweep_taus)
    if (!(t > 0.0)) throw config_error("sweep: tau values must be positive");
  const std::vector<double> xs = default_queries(rc);
  for (double x : xs)
    if (!(x > 0.0)) throw config_error("sweep: query_xs must be positive");

  const auto all_rows = ordered_parallel_map<std::vector<CompareRow>>(
      rc.sweep_taus.size(),
      [&](size_t i) { return compare_rows(with_tau(rc, rc.sweep_taus[i])); });

  std::ostringstream csv;
  csv << "tau,x,l1_rho_v,l1_u,l1_total,c_over_x_tau2\n";
  for (size_t i = 0; i < rc.sweep_taus.size(); ++i) {
    const double tau = rc.sweep_taus[i];
    for (const CompareRow& r : all_rows[i]) {
      csv << format_double(tau) << ',' << format_double(r.x) << ','
          << format_double(r.l1_rho_v) << ',' << format_double(r.l1_u) << ','
          << format_double(r.l1_total) << ','
          << format_double(r.l1_total / (r.x * tau * tau)) << '\n';
    }
  }
  atomic_write(out.sweep_csv, csv.str());

  json jx = json::array();
  for (size_t k = 0; k < xs.size(); ++k) {
    SweepXFit fit;
    fit.x = xs[k];
    std::vector<std::pair<double, double>> pairs;
    for (size_t i = 0; i < rc.sweep_taus.size(); ++i) {
      const double tau = rc.sweep_taus[i];
      const double err = all_rows[i][k].l1_total;
      pairs.emplace_back(tau, err);
      fit.tau_rows.push_back({tau, err, err / (fit.x * tau * tau)});
    }
    fit.fit = fit_rate(pairs);
    json je = json::array();
    for (const auto& row : fit.tau_rows)
      je.push_back({{"tau", row[0]}, {"error", row[1]}, {"c", row[2]}});
    jx.push_back({{"x", fit.x},
                  {"slope", fit.fit.slope},
                  {"intercept", fit.fit.intercept},
                  {"residual", fit.fit.residual},
                  {"errors", je}});
    out.fits.push_back(std::move(fit));
  }
  // x-linearity: spread of E/(x tau^2) across the query xs, per tau.
  json jl = json::array();
  for (size_t i = 0; i < rc.sweep_taus.size(); ++i) {
    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    for (size_t k = 0; k < xs.size(); ++k) {
      const double c = all_rows[i][k].l1_total / (xs[k] * rc.sweep_taus[i] * rc.sweep_taus[i]);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
    out.linearity.emplace_back(rc.sweep_taus[i], cmax / cmin);
    jl.push_back({{"tau", rc.sweep_taus[i]}, {"ratio", cmax / cmin}});
  }
  json j;
  j["synthetic"] = false;
  j["per_x"] = jx;
  j["x_linearity"] = jl;
  atomic_write(out.slopes_json, j.dump(2) + "\n");
  if (!quiet)
    std::fprintf(stderr, "sweep: %zu taus x %zu queries -> %s\n",
                 rc.sweep_taus.size(), xs.size(), out.slopes_json.c_str());
  return out;
}

namespace {

struct WingTailRun {
  Trajectory traj;       // Cauchy continuation, local x in [0, horizon - chord]
  double chord = 0.0;
  SimilarityParams params;
};

WingTailRun wing_chain(const RunConfig& rc, const HalfProblems& halves,
                       double tau, double horizon) {
  SimilarityParams p = rc.params;
  p.tau = tau;
  const double chord = halves.chord;

  const SampledData full = sample_initial_data(rc.initial, rc.nu);
  auto run_half = [&](const BoundarySpec& spec, const SampledData& data) {
    EngineConfig ec;
    ec.params = p;
    ec.mode = GeometryMode::ibvp;
    ec.wall = build_polyline(spec, rc.h);
    ec.initial = data;
    ec.nu = rc.nu;
    ec.x_end = chord;
    ec.seed = rc.seed;
    ec.budget_epsilon = rc.budget_epsilon;
    return run(ec);
  };
  const Trajectory lower = run_half(halves.lower, clip_trace_below(full, 0.0));
  const Trajectory upper = run_half(halves.upper_mirrored,
                                    clip_trace_above_mirrored(full, 0.0));

  const SampledData glued =
      glue_wing_traces(profile_of(lower, chord), profile_of(upper, chord));

  EngineConfig tail;
  tail.params = p;
  tail.mode = GeometryMode::cauchy;
  tail.initial = glued;
  tail.nu = rc.nu;
  tail.x_end = horizon - chord;
  tail.seed = rc.seed;
  // The glued trace is certified by the half-run Glimm bounds; its TV is
  // roughly twice the per-surface budget, so the user's knob does not apply.
  double glued_tv = 0.0;
  for (size_t i = 0; i + 1 < glued.states.size(); ++i)
    glued_tv += abs_sum(glued.states[i], glued.states[i + 1]);
  tail.budget_epsilon = std::max(rc.budget_epsilon, 1.5 * glued_tv + 0.05);
  WingTailRun out{run(tail), chord, p};
  return out;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i)
    xs.push_back(lo * std::pow(hi / lo, (double)i / n));
  return xs;
}

}  // namespace

WingOutput cmd_wing(const RunConfig& rc, const std::string& out_dir, bool quiet) {
  if (!rc.wing) throw config_error("wing: config has no wing block");
  std::vector<double> taus = rc.wing_taus;
  if (taus.empty()) taus = {0.2, 0.1, 0.05};
  if (taus.size() < 3) throw config_error("wing: need at least 3 tau values");
  const WingGeometry geom = rc.wing->build();
  const HalfProblems halves = wing_to_half_problems(geom);
  const double chord = halves.chord;
  double max_horizon = 0.0;
  for (double t : taus) {
    if (!(t > 0.0)) throw config_error("wing: tau values must be positive");
    if (!(rc.horizon_c / t > chord))
      throw config_error("wing: horizon c/tau must exceed the chord");
    max_horizon = std::max(max_horizon, rc.horizon_c / t);
  }

  // One small-disturbance chain covers every horizon.
  const WingTailRun ref = wing_chain(rc, halves, 0.0, max_horizon);

  const auto tau_runs = ordered_parallel_map<WingTailRun>(
      taus.size(), [&](size_t i) {
        return wing_chain(rc, halves, taus[i], rc.horizon_c / taus[i]);
      });

  WingOutput out;
  const fs::path dir(out_dir);
  out.decay_csv = (dir / "decay.csv").string();
  out.tail_csv = (dir / "tail_error.csv").string();
  out.slopes_json = (dir / "wing_slopes.json").string();

  // Tail errors: sup over a geometric grid in (chord, horizon].
  std::ostringstream tail_csv;
  tail_csv << "tau,sup_l1_total,x_at_sup,horizon\n";
  std::vector<std::pair<double, double>> tail_pairs;
  for (size_t i = 0; i < taus.size(); ++i) {
    const double tau = taus[i];
    const double horizon = rc.horizon_c / tau;
    const auto grid = geometric_grid(chord * 1.02, horizon, 24);
    double sup = 0.0, x_at = grid.front();
    for (double x : grid) {
      const Profile pt = profile_of(tau_runs[i].traj, x - chord);
      const Profile p0 = profile_of(ref.traj, x - chord);
      const double upper = std::numeric_limits<double>::infinity();
      double err = l1_distance(pt, p0, upper);
      err += l1_distance_scalar(reconstruct_u(pt, tau_runs[i].params),
                                reconstruct_u(p0, ref.params), upper);
      if (err > sup) {
        sup = err;
        x_at = x;
      }
    }
    tail_pairs.emplace_back(tau, sup);
    out.tail.push_back({tau, sup, x_at});
    tail_csv << format_double(tau) << ',' << format_double(sup) << ','
             << format_double(x_at) << ',' << format_double(horizon) << '\n';
  }
  bool degenerate = false;
  for (const auto& [t, e] : tail_pairs) degenerate = degenerate || e <= 1e-14;
  out.tail_fit = degenerate ? FitResult{} : fit_rate(tail_pairs);
  atomic_write(out.tail_csv, tail_csv.str());

  // TV decay of the small-disturbance run past the trailing edge.
  std::ostringstream decay_csv;
  decay_csv << "x,tv\n";
  const auto grid = geometric_grid(chord * 1.05, max_horizon, 32);
  std::vector<std::pair<double, double>> decay_pairs;
  for (double x : grid) {
    const double tv = total_variation(profile_of(ref.traj, x - chord));
    out.decay.emplace_back(x, tv);
    decay_csv << format_double(x) << ',' << format_double(tv) << '\n';
    if (x >= 2.0 * chord && tv > 0.0) decay_pairs.emplace_back(x, tv);
  }
  atomic_write(out.decay_csv, decay_csv.str());
  if (decay_pairs.size() >= 3) {
    out.tv_fit = fit_rate(decay_pairs);
  } else {
    out.tv_fit = {0.0, 0.0, 0.0};
  }
  out.tv_warn = out.tv_fit.slope > -0.3;
  if (out.tv_warn)
    std::fprintf(stderr,
                 "wing: warning: TV decay slope %.3f is worse than x^-0.3\n",
                 out.tv_fit.slope);

  json j;
  j["tv_decay"] = {{"slope", out.tv_fit.slope},
                   {"intercept", out.tv_fit.intercept},
                   {"residual", out.tv_fit.residual},
                   {"warn", out.tv_warn},
                   {"fit_window_lo", 2.0 * chord}};
  json jt = json::array();
  for (const auto& row : out.tail)
    jt.push_back({{"tau", row[0]}, {"sup_error", row[1]}, {"x_at_sup", row[2]}});
  j["tail"] = {{"slope", out.tail_fit.slope},
               {"intercept", out.tail_fit.intercept},
               {"residual", out.tail_fit.residual},
               {"points", jt}};
  atomic_write(out.slopes_json, j.dump(2) + "\n");
  if (!quiet)
    std::fprintf(stderr, "wing: tail slope %.3f, tv slope %.3f -> %s\n",
                 out.tail_fit.slope, out.tv_fit.slope, out.slopes_json.c_str());
  return out;
}

}  // namespace hyperfront
