#include "campaign/degree_model.hpp"
#include "campaign/dynamics.hpp"
#include "campaign/netsim.hpp"
#include "campaign/optimizer.hpp"
#include "campaign/scenario.hpp"
#include "campaign/strategies.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace campaign;

namespace {

py::array_t<double> as_array(std::span<const double> v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

/// (points, classes) copy of the state.
py::array_t<double> state_matrix(const Trajectory& t) {
  py::array_t<double> out({static_cast<py::ssize_t>(t.grid().points()),
                           static_cast<py::ssize_t>(t.classes())});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t n = 0; n < t.grid().points(); ++n)
    for (std::size_t j = 0; j < t.classes(); ++j) view(n, j) = t.at(n, j);
  return out;
}

/// (groups, points) copies of u and v.
std::pair<py::array_t<double>, py::array_t<double>> controls(const ControlSchedule& s) {
  const auto g = static_cast<py::ssize_t>(s.groups());
  const auto p = static_cast<py::ssize_t>(s.grid().points());
  py::array_t<double> u({g, p}), v({g, p});
  auto uu = u.mutable_unchecked<2>();
  auto vv = v.mutable_unchecked<2>();
  for (py::ssize_t m = 0; m < g; ++m)
    for (py::ssize_t n = 0; n < p; ++n) {
      uu(m, n) = s.u(m, n);
      vv(m, n) = s.v(m, n);
    }
  return {u, v};
}

ControlSchedule schedule_from(const TimeGrid& grid, py::array_t<double, py::array::c_style | py::array::forcecast> u,
                              py::array_t<double, py::array::c_style | py::array::forcecast> v) {
  if (u.ndim() != 2 || v.ndim() != 2 || u.shape(0) != v.shape(0) || u.shape(1) != v.shape(1))
    throw std::invalid_argument("u and v must be (groups, points) arrays of equal shape");
  if (static_cast<std::size_t>(u.shape(1)) != grid.points())
    throw std::invalid_argument("control arrays need one column per grid point");
  const auto groups = static_cast<std::size_t>(u.shape(0));
  std::vector<double> x(u.data(), u.data() + u.size());
  x.insert(x.end(), v.data(), v.data() + v.size());
  return ControlSchedule(grid, groups, x);
}

py::dict summary_dict(const ScenarioSummary& s) {
  py::dict d;
  d["strategy"] = s.strategy;
  d["J"] = s.j;
  d["spend"] = s.spend;
  d["budget"] = s.budget;
  d["J_none"] = s.j_none;
  d["J_static"] = s.j_static;
  d["J_bang"] = s.j_bang;
  d["kappa"] = s.kappa;
  d["tau"] = s.tau;
  d["group_shares"] = s.group_shares;
  d["wom_share"] = s.wom_share;
  d["seconds"] = s.seconds;
  if (s.solution) {
    d["converged"] = s.solution->converged;
    d["kkt_residual"] = s.solution->kkt_residual;
    d["iterations"] = s.solution->iterations;
    d["multiplier"] = s.solution->multiplier;
  }
  return d;
}

} // namespace

PYBIND11_MODULE(_campaign, m) {
  m.doc() = "Optimal campaign controls for SI spreading on degree-heterogeneous networks";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InfeasibleBudget>(m, "InfeasibleBudget", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<DegreeDistribution>(m, "DegreeDistribution")
      .def(py::init<int, std::vector<double>>(), py::arg("k_min"), py::arg("pmf"))
      .def_property_readonly("k_min", &DegreeDistribution::k_min)
      .def_property_readonly("k_max", &DegreeDistribution::k_max)
      .def_property_readonly("pmf", [](const DegreeDistribution& d) { return as_array(d.pmf()); })
      .def_property_readonly("mean_degree", &DegreeDistribution::mean_degree)
      .def("__len__", &DegreeDistribution::size);

  m.def("truncated_poisson", &make_truncated_poisson, py::arg("lam"), py::arg("k_min"), py::arg("k_max"));
  m.def("power_law", &make_power_law, py::arg("gamma"), py::arg("k_min"), py::arg("k_max"));
  m.def("preset", [](const std::string& name) { return NetworkSpec::preset(name).build(); },
        py::arg("name"), "Degree distribution of a named network: ER, PL2 or PL3.");

  py::class_<Network>(m, "Network")
      .def(py::init([](const DegreeDistribution& d, int groups) {
             return Network(d, partition_equal_mass(d, groups));
           }),
           py::arg("dist"), py::arg("groups"), "Equal-mass split into `groups` degree-class groups.")
      .def(py::init([](const DegreeDistribution& d, std::vector<int> boundaries) {
             return Network(d, GroupPartition(d, std::move(boundaries)));
           }),
           py::arg("dist"), py::arg("boundaries"))
      .def_property_readonly("dist", [](const Network& n) { return n.dist; })
      .def_property_readonly("groups", &Network::groups)
      .def_property_readonly("boundaries", [](const Network& n) {
        return std::vector<int>(n.partition.boundaries().begin(), n.partition.boundaries().end());
      })
      .def_property_readonly("group_masses", [](const Network& n) { return as_array(n.partition.masses()); })
      .def_property_readonly("group_mean_degrees", [](const Network& n) {
        return group_mean_degrees(n.dist, n.partition);
      })
      .def_property_readonly("r", [](const Network& n) { return as_array(n.neighbors.r); })
      .def_property_readonly("q", [](const Network& n) { return as_array(n.neighbors.q); });

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init([](std::size_t groups) { return ModelParams::defaults(groups); }), py::arg("groups"))
      .def_property("profile",
                    [](const ModelParams& p) { return to_string(p.profile.kind); },
                    [](ModelParams& p, const std::string& s) { p.profile.kind = parse_profile_kind(s); })
      .def_property("beta",
                    [](const ModelParams& p) { return p.profile.beta; },
                    [](ModelParams& p, double b) { p.profile.beta = b; })
      .def_property("beta_max",
                    [](const ModelParams& p) { return p.profile.beta_max; },
                    [](ModelParams& p, double b) { p.profile.beta_max = b; })
      .def_readwrite("alpha", &ModelParams::alpha)
      .def_readwrite("i0", &ModelParams::i0)
      .def_readwrite("T", &ModelParams::horizon)
      .def_readwrite("u_max", &ModelParams::u_max)
      .def_readwrite("v_max", &ModelParams::v_max)
      .def_readwrite("b_hat", &ModelParams::b_hat)
      .def_readwrite("c_hat", &ModelParams::c_hat)
      .def_readwrite("d", &ModelParams::d)
      .def_readwrite("B", &ModelParams::budget)
      .def("beta_at", &ModelParams::beta, py::arg("t"))
      .def("validate", &ModelParams::validate, py::arg("groups"));

  py::class_<TimeGrid>(m, "TimeGrid")
      .def(py::init<double, int>(), py::arg("T") = 1.0, py::arg("intervals") = 50)
      .def_property_readonly("points", &TimeGrid::points)
      .def_property_readonly("dt", &TimeGrid::dt)
      .def_property_readonly("times", [](const TimeGrid& g) {
        std::vector<double> t(g.points());
        for (std::size_t n = 0; n < t.size(); ++n) t[n] = g.time(n);
        return t;
      });

  py::class_<ControlSchedule>(m, "ControlSchedule")
      .def(py::init(&schedule_from), py::arg("grid"), py::arg("u"), py::arg("v"))
      .def_static("zeros", [](const TimeGrid& g, std::size_t groups) { return ControlSchedule(g, groups); },
                  py::arg("grid"), py::arg("groups"))
      .def_static("constant", &ControlSchedule::constant, py::arg("grid"), py::arg("groups"), py::arg("u"), py::arg("v"))
      .def_property_readonly("u", [](const ControlSchedule& s) { return controls(s).first; })
      .def_property_readonly("v", [](const ControlSchedule& s) { return controls(s).second; })
      .def_property_readonly("groups", &ControlSchedule::groups);

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly("states", &state_matrix)
      .def_property_readonly("total", [](const Trajectory& t) {
        std::vector<double> out(t.grid().points());
        for (std::size_t n = 0; n < out.size(); ++n) out[n] = t.total(n);
        return out;
      });

  m.def("integrate", &integrate_heun, py::arg("params"), py::arg("schedule"), py::arg("network"),
        "Heun trajectory of the mean-field system under `schedule`.");
  m.def("objective", [](const Trajectory& t, const Network& n) { return objective(t, n.dist); },
        py::arg("trajectory"), py::arg("network"));
  m.def("spend", &budget_spend, py::arg("trajectory"), py::arg("schedule"), py::arg("params"), py::arg("network"));
  m.def("full_intensity_spend", &full_intensity_spend, py::arg("params"), py::arg("network"), py::arg("grid"));

  m.def("static_strategy", [](const ModelParams& p, const Network& n, const TimeGrid& g) {
          auto s = static_strategy(p, n, g);
          return py::make_tuple(s.schedule, s.kappa);
        }, py::arg("params"), py::arg("network"), py::arg("grid"), "Returns (schedule, kappa).");
  m.def("bang_bang_strategy", [](const ModelParams& p, const Network& n, const TimeGrid& g) {
          auto s = bang_bang_strategy(p, n, g);
          return py::make_tuple(s.schedule, s.tau);
        }, py::arg("params"), py::arg("network"), py::arg("grid"), "Returns (schedule, tau).");

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol_grad", &SolverOptions::tol_grad)
      .def_readwrite("tol_con", &SolverOptions::tol_con)
      .def_readwrite("max_outer", &SolverOptions::max_outer)
      .def_readwrite("max_inner", &SolverOptions::max_inner)
      .def_readwrite("n_starts", &SolverOptions::n_starts)
      .def_readwrite("seed", &SolverOptions::seed)
      .def_readwrite("workers", &SolverOptions::workers);

  py::class_<OptimalSolution>(m, "OptimalSolution")
      .def_readonly("schedule", &OptimalSolution::schedule)
      .def_readonly("J", &OptimalSolution::objective)
      .def_readonly("spend", &OptimalSolution::spend)
      .def_readonly("multiplier", &OptimalSolution::multiplier)
      .def_readonly("iterations", &OptimalSolution::iterations)
      .def_readonly("kkt_residual", &OptimalSolution::kkt_residual)
      .def_readonly("converged", &OptimalSolution::converged);

  m.def("solve", [](const ModelParams& p, const Network& n, const TimeGrid& g, const SolverOptions& o) {
          py::gil_scoped_release release;
          return solve(transcribe(p, n, g), o);
        }, py::arg("params"), py::arg("network"), py::arg("grid"), py::arg("options") = SolverOptions{});
  m.def("gradient", [](const ModelParams& p, const Network& n, const TimeGrid& g, std::vector<double> x) {
          auto grads = gradient(transcribe(p, n, g), x);
          return py::make_tuple(grads.objective, grads.constraint);
        }, py::arg("params"), py::arg("network"), py::arg("grid"), py::arg("x"),
        "Adjoint gradients (dJ/dx, dspend/dx) of the decision vector (u rows, then v rows).");

  m.def("ensemble", [](const Network& n, const ModelParams& p, const ControlSchedule& s, std::size_t nodes,
                       int runs, double dt, std::uint64_t seed, int workers) {
          EnsembleResult r;
          {
            py::gil_scoped_release release;
            r = ensemble(n, p, s, {nodes, runs, dt, seed, workers});
          }
          py::dict d;
          d["t"] = r.times;
          d["mean"] = r.mean;
          d["std"] = r.stddev;
          return d;
        }, py::arg("network"), py::arg("params"), py::arg("schedule"), py::arg("nodes") = 10000,
        py::arg("runs") = 20, py::arg("dt") = 0.0, py::arg("seed") = 1, py::arg("workers") = 0);

  m.def("evaluate_scenario", [](const std::string& config) {
          const Scenario s = parse_scenario(config);
          ScenarioSummary out;
          {
            py::gil_scoped_release release;
            out = evaluate_scenario(s);
          }
          return summary_dict(out);
        }, py::arg("config_json"), "Runs a scenario in memory and returns its summary.");
  m.def("run", [](const std::string& command, const std::string& config) {
          const Scenario s = parse_scenario(config);
          RunOutcome out;
          {
            py::gil_scoped_release release;
            if (command == "solve") out = run_scenario(s);
            else if (command == "sweep") out = run_sweep(s);
            else if (command == "validate") out = run_validation(s);
            else if (command == "baseline") out = run_baseline(s);
            else throw std::invalid_argument("unknown command '" + command + "'");
          }
          std::vector<std::string> written;
          for (const auto& p : out.written) written.push_back(p.string());
          return py::make_tuple(out.exit_code, written);
        }, py::arg("command"), py::arg("config_json"),
        "Same as the CLI subcommand; returns (exit_code, written_paths).");
}
