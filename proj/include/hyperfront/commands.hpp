#ifndef HYPERFRONT_COMMANDS_HPP_
#define HYPERFRONT_COMMANDS_HPP_

#include <array>
#include <string>
#include <vector>

#include "hyperfront/config.hpp"
#include "hyperfront/profile.hpp"

namespace hyperfront {

struct RunOutput {
  std::string events_csv, profiles_csv, summary_json;
  std::size_t n_events = 0;
  double max_rarefaction = 0.0;
  double max_total_np = 0.0;
};

struct CompareRow {
  double x = 0.0;
  double l1_rho_v = 0.0, l1_u = 0.0, l1_total = 0.0;
  double tv_tau = 0.0, tv_0 = 0.0;
  double glimm_tau = 0.0, glimm_0 = 0.0;
};

struct CompareOutput {
  std::string comparison_csv;
  std::vector<CompareRow> rows;
};

struct SweepXFit {
  double x = 0.0;
  FitResult fit;
  // one entry per tau: (tau, error, error / (x tau^2))
  std::vector<std::array<double, 3>> tau_rows;
};

struct SweepOutput {
  std::string sweep_csv, slopes_json;
  bool synthetic = false;
  FitResult synthetic_fit;
  std::vector<SweepXFit> fits;
  // per tau: max_x C / min_x C
  std::vector<std::pair<double, double>> linearity;
};

struct WingOutput {
  std::string decay_csv, tail_csv, slopes_json;
  std::vector<std::pair<double, double>> decay;  // (x, TV of the tau=0 run)
  FitResult tv_fit;
  bool tv_warn = false;
  std::vector<std::array<double, 3>> tail;  // (tau, sup error, x at sup)
  FitResult tail_fit;
};

RunOutput cmd_run(const RunConfig& rc, const std::string& out_dir,
                  bool quiet = true);
CompareOutput cmd_compare(const RunConfig& rc, const std::string& out_dir,
                          bool quiet = true);
SweepOutput cmd_sweep(const RunConfig& rc, const std::string& out_dir,
                      bool quiet = true);
WingOutput cmd_wing(const RunConfig& rc, const std::string& out_dir,
                    bool quiet = true);

/// Comparison rows without file output (the shared core of compare/sweep).
std::vector<CompareRow> compare_rows(const RunConfig& rc);

/// Full-line initial data for the Cauchy continuation past the trailing
/// edge: the lower trace below y = 0, the reflected upper trace above.
SampledData glue_wing_traces(const Profile& lower, const Profile& upper_mirrored);

/// Restrictions of full-line data to the two half problems (the upper one
/// reflected through y -> -y, v -> -v).
SampledData clip_trace_below(const SampledData& data, double y0);
SampledData clip_trace_above_mirrored(const SampledData& data, double y0);

/// Concurrency cap for per-tau runs (HYPERFRONT_THREADS, default 4).
int max_worker_threads();

std::string format_double(double v);  // 17 significant digits

}  // namespace hyperfront

#endif  // HYPERFRONT_COMMANDS_HPP_
