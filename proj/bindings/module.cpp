#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyperfront/commands.hpp"
#include "hyperfront/profile.hpp"

namespace py = pybind11;
using namespace hyperfront;

namespace {

Profile profile_from_lists(const std::vector<double>& breaks,
                           const std::vector<std::pair<double, double>>& states) {
  if (states.size() != breaks.size() + 1)
    throw std::invalid_argument("profile: need breaks+1 states");
  Profile prof;
  prof.breaks = breaks;
  for (const auto& [rho, v] : states) prof.states.push_back({rho, v});
  prof.background = prof.states.front();
  return prof;
}

}  // namespace

PYBIND11_MODULE(_hyperfront, m) {
  m.doc() = "Front-tracking solver for the scaled potential-flow system and "
            "its hypersonic small-disturbance limit";

  py::register_exception<domain_error>(m, "DomainError");
  py::register_exception<no_convergence_error>(m, "NoConvergenceError");
  py::register_exception<config_error>(m, "ConfigError");
  py::register_exception<budget_exceeded_error>(m, "BudgetExceededError");

  py::class_<SimilarityParams>(m, "SimilarityParams")
      .def(py::init([](double gamma, double a_inf, double tau, double radius) {
             SimilarityParams p{gamma, a_inf, tau, radius};
             p.validate();
             return p;
           }),
           py::arg("gamma") = 1.4, py::arg("a_inf") = 0.5, py::arg("tau") = 0.0,
           py::arg("neighborhood_radius") = 0.1)
      .def_readonly("gamma", &SimilarityParams::gamma)
      .def_readonly("a_inf", &SimilarityParams::a_inf)
      .def_readonly("tau", &SimilarityParams::tau)
      .def_readonly("neighborhood_radius", &SimilarityParams::neighborhood_radius);

  py::class_<State>(m, "State")
      .def(py::init([](double rho, double v) { return State{rho, v}; }),
           py::arg("rho") = 1.0, py::arg("v") = 0.0)
      .def_readonly("rho", &State::rho)
      .def_readonly("v", &State::v)
      .def("__repr__", [](const State& s) {
        return "State(rho=" + format_double(s.rho) + ", v=" + format_double(s.v) + ")";
      });

  m.def("axial_velocity", &axial_velocity, py::arg("state"), py::arg("params"));
  m.def("sonic_speed", &sonic_speed, py::arg("rho"), py::arg("params"));
  m.def("flux_G", &flux_G, py::arg("state"), py::arg("params"));
  m.def("flux_F", &flux_F, py::arg("state"), py::arg("params"));
  m.def("eigenvalues", &eigenvalues, py::arg("state"), py::arg("params"));
  m.def("eigenvector", &eigenvector, py::arg("family"), py::arg("state"),
        py::arg("params"));
  m.def("entropy_pair", &entropy_pair, py::arg("state"), py::arg("params"));

  py::class_<WavePoint>(m, "WavePoint")
      .def_readonly("state", &WavePoint::state)
      .def_readonly("speed", &WavePoint::speed)
      .def_readonly("family", &WavePoint::family)
      .def_readonly("strength", &WavePoint::strength);
  m.def("wave_curve", &wave_curve, py::arg("family"), py::arg("alpha"),
        py::arg("left"), py::arg("params"));

  py::class_<RiemannFan>(m, "RiemannFan")
      .def_readonly("alpha1", &RiemannFan::alpha1)
      .def_readonly("alpha2", &RiemannFan::alpha2)
      .def_readonly("middle", &RiemannFan::middle);
  m.def("solve_interior", &solve_interior, py::arg("left"), py::arg("right"),
        py::arg("params"));

  py::class_<BoundaryFan>(m, "BoundaryFan")
      .def_readonly("alpha1", &BoundaryFan::alpha1)
      .def_readonly("wall_state", &BoundaryFan::wall_state);
  m.def("solve_boundary", &solve_boundary, py::arg("left"), py::arg("theta_out"),
        py::arg("params"));

  m.def("l1_distance",
        [](const std::vector<double>& breaks_a,
           const std::vector<std::pair<double, double>>& states_a,
           const std::vector<double>& breaks_b,
           const std::vector<std::pair<double, double>>& states_b, double upper) {
          return l1_distance(profile_from_lists(breaks_a, states_a),
                             profile_from_lists(breaks_b, states_b), upper);
        },
        py::arg("breaks_a"), py::arg("states_a"), py::arg("breaks_b"),
        py::arg("states_b"), py::arg("upper"));

  m.def("fit_rate", [](const std::vector<std::pair<double, double>>& pairs) {
    const FitResult f = fit_rate(pairs);
    return py::make_tuple(f.slope, f.intercept, f.residual);
  });

  py::class_<CompareRow>(m, "CompareRow")
      .def_readonly("x", &CompareRow::x)
      .def_readonly("l1_rho_v", &CompareRow::l1_rho_v)
      .def_readonly("l1_u", &CompareRow::l1_u)
      .def_readonly("l1_total", &CompareRow::l1_total)
      .def_readonly("tv_tau", &CompareRow::tv_tau)
      .def_readonly("tv_0", &CompareRow::tv_0);

  m.def("load_config", &load_config_string, py::arg("json_text"));
  py::class_<RunConfig>(m, "RunConfig")
      .def_readonly("regime", &RunConfig::regime)
      .def_readonly("h", &RunConfig::h)
      .def_readonly("nu", &RunConfig::nu)
      .def_readonly("x_end", &RunConfig::x_end);

  m.def("compare_rows", &compare_rows, py::arg("config"),
        "Paired tau / tau=0 runs; one row per query x");

  m.def("state_at",
        [](const RunConfig& rc, double x, double y) {
          const Trajectory traj = run(make_engine_config(rc));
          return traj.state_at(x, y);
        },
        py::arg("config"), py::arg("x"), py::arg("y"),
        "Run the config and return the solution state at (x, y)");

  m.def("run_summary", [](const RunConfig& rc) {
    const EngineConfig ec = make_engine_config(rc);
    const Trajectory traj = run(ec);
    py::dict d;
    d["events"] = traj.events().size();
    d["fronts"] = traj.fronts().size();
    d["max_rarefaction"] = traj.max_rarefaction_strength();
    d["max_total_np"] = traj.max_total_np_strength();
    d["glimm_initial"] = traj.glimm_initial_total();
    d["lambda_hat"] = traj.lambda_hat();
    return d;
  });
}
