#include "campaign/scenario.hpp"

#include "campaign/csv.hpp"
#include "campaign/parallel.hpp"
#include "campaign/strategies.hpp"

#include "json.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace campaign {

using nlohmann::json;

namespace {

const std::set<std::string> kSweepParameters{"B", "d", "beta", "b_hat_2", "i0"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
}

template <typename T>
T get_as(const json& obj, const std::string& key, const std::string& where) {
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("'" + key + "' in " + where + " has the wrong type");
  }
}

std::vector<double> weights(const json& value, std::size_t groups, const std::string& key) {
  if (value.is_number()) return std::vector<double>(groups, value.get<double>());
  if (value.is_array()) {
    auto w = value.get<std::vector<double>>();
    if (w.size() != groups)
      throw ConfigError("'" + key + "' needs " + std::to_string(groups) + " entries");
    return w;
  }
  throw ConfigError("'" + key + "' must be a number or an array");
}

NetworkSpec parse_network(const json& node) {
  if (node.is_string()) return NetworkSpec::preset(node.get<std::string>());
  if (!node.is_object()) throw ConfigError("'network' must be a preset name or an object");
  reject_unknown(node, {"preset", "kind", "lambda", "gamma", "k_min", "k_max"}, "network");
  NetworkSpec spec;
  if (node.contains("preset")) spec = NetworkSpec::preset(get_as<std::string>(node, "preset", "network"));
  if (node.contains("kind")) spec.kind = get_as<std::string>(node, "kind", "network");
  if (spec.kind != "poisson" && spec.kind != "power_law")
    throw ConfigError("network kind must be 'poisson' or 'power_law'");
  if (node.contains("lambda")) spec.lambda = get_as<double>(node, "lambda", "network");
  if (node.contains("gamma")) spec.gamma = get_as<double>(node, "gamma", "network");
  if (node.contains("k_min")) spec.k_min = get_as<int>(node, "k_min", "network");
  if (node.contains("k_max")) spec.k_max = get_as<int>(node, "k_max", "network");
  return spec;
}

json network_json(const NetworkSpec& spec) {
  json j{{"kind", spec.kind}, {"k_min", spec.k_min}, {"k_max", spec.k_max}};
  if (spec.kind == "poisson")
    j["lambda"] = spec.lambda;
  else
    j["gamma"] = spec.gamma;
  return j;
}

double improvement(double j_opt, double j_base) { return 100.0 * (j_opt - j_base) / j_base; }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

DegreeDistribution NetworkSpec::build() const {
  if (kind == "poisson") return make_truncated_poisson(lambda, k_min, k_max);
  if (kind == "power_law") return make_power_law(gamma, k_min, k_max);
  throw ConfigError("unknown network kind '" + kind + "'");
}

NetworkSpec NetworkSpec::preset(const std::string& name) {
  if (name == "ER") return {"poisson", 23.60, 3.0, 1, 60};
  if (name == "PL2") return {"power_law", 23.60, 2.0, 6, 300};
  if (name == "PL3") return {"power_law", 23.60, 3.0, 13, 300};
  throw ConfigError("unknown network preset '" + name + "' (expected ER, PL2 or PL3)");
}

Strategy parse_strategy(const std::string& name) {
  if (name == "optimal") return Strategy::optimal;
  if (name == "static") return Strategy::static_control;
  if (name == "bang_bang") return Strategy::bang_bang;
  if (name == "none") return Strategy::none;
  throw ConfigError("unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
  case Strategy::optimal: return "optimal";
  case Strategy::static_control: return "static";
  case Strategy::bang_bang: return "bang_bang";
  case Strategy::none: return "none";
  }
  return "optimal";
}

Network Scenario::build_network() const {
  DegreeDistribution dist = network.build();
  GroupPartition part = partition_equal_mass(dist, groups);
  return Network(std::move(dist), std::move(part));
}

ModelParams Scenario::resolved_params() const {
  ModelParams p = params;
  if (!budget_absolute) p.budget = budget_normalized * p.u_max * p.u_max * p.horizon;
  return p;
}

Scenario Scenario::with_parameter(const std::string& name, double value) const {
  Scenario s = *this;
  if (name == "B") {
    s.budget_normalized = value;
    s.budget_absolute = false;
  } else if (name == "d") {
    s.params.d = value;
  } else if (name == "beta") {
    s.params.profile.kind = ProfileKind::constant;
    s.params.profile.beta = value;
  } else if (name == "b_hat_2") {
    if (s.groups < 2) throw ConfigError("b_hat_2 sweep needs at least 2 groups");
    s.params.b_hat[1] = value;
    s.params.c_hat[1] = value;
  } else if (name == "i0") {
    s.params.i0 = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + name + "'");
  }
  return s;
}

namespace {

Scenario parse_checked(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  reject_unknown(root,
                 {"name", "network", "groups", "grid_points", "model", "strategy", "solver",
                  "sweep", "simulation", "output_dir", "seed", "workers"},
                 "config");

  Scenario s;
  if (root.contains("name")) s.name = get_as<std::string>(root, "name", "config");
  if (root.contains("network")) s.network = parse_network(root["network"]);
  if (root.contains("groups")) s.groups = get_as<int>(root, "groups", "config");
  if (root.contains("grid_points")) s.grid_points = get_as<int>(root, "grid_points", "config");
  if (s.groups < 1) throw ConfigError("groups must be at least 1");
  if (s.grid_points < 2) throw ConfigError("grid_points must be at least 2");
  if (root.contains("seed")) s.seed = get_as<std::uint64_t>(root, "seed", "config");
  if (root.contains("workers")) s.workers = get_as<int>(root, "workers", "config");
  if (root.contains("output_dir"))
    s.output_dir = get_as<std::string>(root, "output_dir", "config");
  else
    s.output_dir = std::filesystem::path("results") / s.name;
  if (root.contains("strategy")) s.strategy = parse_strategy(get_as<std::string>(root, "strategy", "config"));

  const auto groups = static_cast<std::size_t>(s.groups);
  s.params = ModelParams::defaults(groups);
  if (root.contains("model")) {
    const json& m = root["model"];
    if (!m.is_object()) throw ConfigError("'model' must be an object");
    reject_unknown(m,
                   {"profile", "beta", "beta_max", "alpha", "i0", "T", "u_max", "v_max", "b_hat",
                    "c_hat", "d", "B", "B_normalized"},
                   "model");
    auto& p = s.params;
    if (m.contains("profile"))
      p.profile.kind = parse_profile_kind(get_as<std::string>(m, "profile", "model"));
    if (m.contains("beta")) p.profile.beta = get_as<double>(m, "beta", "model");
    if (m.contains("beta_max")) p.profile.beta_max = get_as<double>(m, "beta_max", "model");
    if (m.contains("alpha")) p.alpha = get_as<double>(m, "alpha", "model");
    if (m.contains("i0")) p.i0 = get_as<double>(m, "i0", "model");
    if (m.contains("T")) p.horizon = get_as<double>(m, "T", "model");
    if (m.contains("u_max")) p.u_max = get_as<double>(m, "u_max", "model");
    if (m.contains("v_max")) p.v_max = get_as<double>(m, "v_max", "model");
    if (m.contains("b_hat")) p.b_hat = weights(m["b_hat"], groups, "b_hat");
    if (m.contains("c_hat")) p.c_hat = weights(m["c_hat"], groups, "c_hat");
    if (m.contains("d")) p.d = get_as<double>(m, "d", "model");
    if (m.contains("B") && m.contains("B_normalized"))
      throw ConfigError("give either 'B' or 'B_normalized', not both");
    if (m.contains("B")) {
      p.budget = get_as<double>(m, "B", "model");
      s.budget_absolute = true;
    }
    if (m.contains("B_normalized")) s.budget_normalized = get_as<double>(m, "B_normalized", "model");
  }
  if (!(s.budget_normalized >= 0.0)) throw ConfigError("B_normalized must be non-negative");

  if (root.contains("solver")) {
    const json& o = root["solver"];
    if (!o.is_object()) throw ConfigError("'solver' must be an object");
    reject_unknown(o, {"tol_grad", "tol_con", "max_outer", "max_inner", "n_starts", "seed"},
                   "solver");
    auto& opt = s.solver;
    if (o.contains("tol_grad")) opt.tol_grad = get_as<double>(o, "tol_grad", "solver");
    if (o.contains("tol_con")) opt.tol_con = get_as<double>(o, "tol_con", "solver");
    if (o.contains("max_outer")) opt.max_outer = get_as<int>(o, "max_outer", "solver");
    if (o.contains("max_inner")) opt.max_inner = get_as<int>(o, "max_inner", "solver");
    if (o.contains("n_starts")) opt.n_starts = get_as<int>(o, "n_starts", "solver");
    opt.seed = o.contains("seed") ? get_as<std::uint64_t>(o, "seed", "solver") : s.seed;
    if (!(opt.tol_grad > 0.0) || !(opt.tol_con > 0.0))
      throw ConfigError("solver tolerances must be positive");
    if (opt.max_outer < 1 || opt.max_inner < 1 || opt.n_starts < 1)
      throw ConfigError("solver iteration caps and n_starts must be at least 1");
  } else {
    s.solver.seed = s.seed;
  }
  s.solver.workers = s.workers;

  if (root.contains("sweep")) {
    const json& w = root["sweep"];
    if (!w.is_object()) throw ConfigError("'sweep' must be an object");
    reject_unknown(w, {"parameter", "values"}, "sweep");
    SweepSpec sweep{get_as<std::string>(w, "parameter", "sweep"),
                    get_as<std::vector<double>>(w, "values", "sweep")};
    if (!kSweepParameters.count(sweep.parameter))
      throw ConfigError("sweep parameter '" + sweep.parameter +
                        "' is not one of B, d, beta, b_hat_2, i0");
    if (sweep.values.empty()) throw ConfigError("sweep needs at least one value");
    if (sweep.parameter == "b_hat_2" && s.groups < 2)
      throw ConfigError("b_hat_2 sweep needs at least 2 groups");
    s.sweep = std::move(sweep);
  }

  if (root.contains("simulation")) {
    const json& sim = root["simulation"];
    if (!sim.is_object()) throw ConfigError("'simulation' must be an object");
    reject_unknown(sim, {"nodes", "runs", "dt"}, "simulation");
    if (sim.contains("nodes")) s.simulation.nodes = get_as<std::size_t>(sim, "nodes", "simulation");
    if (sim.contains("runs")) s.simulation.runs = get_as<int>(sim, "runs", "simulation");
    if (sim.contains("dt")) s.simulation.dt = get_as<double>(sim, "dt", "simulation");
    if (s.simulation.nodes < 2 || s.simulation.runs < 1)
      throw ConfigError("simulation needs nodes >= 2 and runs >= 1");
  }

  // everything derived must construct cleanly before any run starts
  try {
    const Network net = s.build_network();
    s.resolved_params().validate(net.groups());
    (void)s.grid();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return s;
}

} // namespace

Scenario parse_scenario(const std::string& json_text) {
  try {
    return parse_checked(json_text);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::filesystem::path output_directory(const Scenario& scenario) {
  if (const char* root = std::getenv("CAMPAIGN_OUTPUT_ROOT"); root && *root)
    return std::filesystem::path(root) / scenario.output_dir.relative_path();
  return scenario.output_dir;
}

namespace {

struct Evaluated {
  Network net;
  ModelParams params;
  ControlSchedule schedule;
  Trajectory trajectory;
  ScenarioSummary summary;
};

Evaluated evaluate(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  Network net = scenario.build_network();
  const ModelParams params = scenario.resolved_params();
  const TimeGrid grid = scenario.grid();

  ScenarioSummary summary;
  summary.strategy = to_string(scenario.strategy);
  summary.budget = params.budget;
  const ControlSchedule none = no_control(net.groups(), grid);
  summary.j_none = objective(integrate_heun(params, none, net), net.dist);

  ControlSchedule schedule = none;
  if (scenario.strategy != Strategy::none) {
    const auto st = static_strategy(params, net, grid);
    const auto bb = bang_bang_strategy(params, net, grid);
    summary.kappa = st.kappa;
    summary.tau = bb.tau;
    summary.j_static = objective(integrate_heun(params, st.schedule, net), net.dist);
    summary.j_bang = objective(integrate_heun(params, bb.schedule, net), net.dist);
    switch (scenario.strategy) {
    case Strategy::static_control: schedule = st.schedule; break;
    case Strategy::bang_bang: schedule = bb.schedule; break;
    case Strategy::optimal: {
      summary.solution = solve(transcribe(params, net, grid), scenario.solver);
      schedule = summary.solution->schedule;
      break;
    }
    case Strategy::none: break;
    }
  }

  Trajectory traj = integrate_heun(params, schedule, net);
  summary.j = objective(traj, net.dist);
  summary.spend = budget_spend(traj, schedule, params, net);
  const ResourceAllocation alloc = resource_allocation_rates(schedule, traj, params, net);
  if (alloc.total() > 0.0) {
    for (std::size_t m = 0; m < net.groups(); ++m) summary.group_shares.push_back(alloc.group_share(m));
    summary.wom_share = alloc.wom_share();
  } else {
    summary.group_shares.assign(net.groups(), 0.0);
  }
  summary.seconds = seconds_since(start);
  return {std::move(net), params, std::move(schedule), std::move(traj), std::move(summary)};
}

json summary_json(const Scenario& scenario, const ScenarioSummary& s,
                  const ResourceAllocation& alloc) {
  json j;
  j["name"] = scenario.name;
  j["strategy"] = s.strategy;
  j["network"] = network_json(scenario.network);
  j["groups"] = scenario.groups;
  j["grid_points"] = scenario.grid_points;
  j["budget"] = s.budget;
  j["J"] = s.j;
  j["spend"] = s.spend;
  j["spend_residual"] = std::abs(s.spend - s.budget) / std::max(s.budget, 1e-12);
  j["J_none"] = s.j_none;
  j["J_static"] = optional_json(s.j_static);
  j["J_bang"] = optional_json(s.j_bang);
  j["kappa"] = optional_json(s.kappa);
  j["tau"] = optional_json(s.tau);
  j["improvement_static_pct"] =
      s.j_static ? json(improvement(s.j, *s.j_static)) : json(nullptr);
  j["improvement_bang_pct"] = s.j_bang ? json(improvement(s.j, *s.j_bang)) : json(nullptr);
  j["shares"] = {{"group", s.group_shares},
                 {"direct", alloc.direct_total},
                 {"wom", alloc.wom_total},
                 {"wom_fraction", s.wom_share}};
  if (s.solution) {
    const auto& sol = *s.solution;
    j["solver"] = {{"iterations", sol.iterations},
                   {"outer_iterations", sol.outer_iterations},
                   {"kkt_residual", sol.kkt_residual},
                   {"converged", sol.converged},
                   {"multiplier", sol.multiplier},
                   {"start_index", sol.start_index}};
  } else {
    j["solver"] = nullptr;
  }
  j["seconds"] = s.seconds;
  return j;
}

void write_resource_csv(const ResourceAllocation& alloc, const TimeGrid& grid,
                        const std::filesystem::path& path) {
  std::vector<std::string> header{"t"};
  for (std::size_t m = 0; m < alloc.rates.groups; ++m) header.push_back("direct_" + std::to_string(m + 1));
  for (std::size_t m = 0; m < alloc.rates.groups; ++m) header.push_back("wom_" + std::to_string(m + 1));
  CsvTable table(std::move(header));
  for (std::size_t n = 0; n < alloc.rates.points; ++n) {
    std::vector<double> row{grid.time(n)};
    for (std::size_t m = 0; m < alloc.rates.groups; ++m) row.push_back(alloc.rates.direct_at(m, n));
    for (std::size_t m = 0; m < alloc.rates.groups; ++m) row.push_back(alloc.rates.wom_at(m, n));
    table.add_row(std::move(row));
  }
  write_file_atomic(path, table.str());
}

/// Degrees shown in trajectory exports: both ends of every group.
std::vector<int> selected_degrees(const Network& net) {
  std::set<int> picks;
  const auto b = net.partition.boundaries();
  for (std::size_t m = 0; m + 1 < b.size(); ++m) {
    picks.insert(b[m] + 1);
    picks.insert(b[m + 1]);
  }
  return {picks.begin(), picks.end()};
}

} // namespace

ScenarioSummary evaluate_scenario(const Scenario& scenario) { return evaluate(scenario).summary; }

RunOutcome run_scenario(const Scenario& scenario) {
  Evaluated ev = evaluate(scenario);
  const auto dir = output_directory(scenario);
  RunOutcome out;

  const auto traj_path = dir / "trajectory.csv";
  write_trajectory_csv(ev.trajectory, ev.net, selected_degrees(ev.net), traj_path);
  out.written.push_back(traj_path);
  if (scenario.strategy == Strategy::none) return out;

  const ResourceAllocation alloc =
      resource_allocation_rates(ev.schedule, ev.trajectory, ev.params, ev.net);
  const auto schedule_path = dir / "schedule.csv";
  const auto rates_path = dir / "resource_rates.csv";
  const auto summary_path = dir / "summary.json";
  write_schedule_csv(ev.schedule, schedule_path);
  write_resource_csv(alloc, ev.schedule.grid(), rates_path);
  write_file_atomic(summary_path, summary_json(scenario, ev.summary, alloc).dump(2) + "\n");
  out.written.insert(out.written.end(), {schedule_path, rates_path, summary_path});

  if (ev.summary.solution && !ev.summary.solution->converged) {
    out.exit_code = ExitCode::not_converged;
    out.message = "solver did not converge (kkt residual " +
                  format_double(ev.summary.solution->kkt_residual) + ")";
  }
  return out;
}

SweepResult compute_sweep(const Scenario& scenario) {
  if (!scenario.sweep) throw ConfigError("config has no 'sweep' section");
  const SweepSpec& sweep = *scenario.sweep;
  SweepResult result{sweep.parameter, std::vector<SweepRow>(sweep.values.size())};

  const bool parallel_points = resolve_workers(scenario.workers) > 1 && sweep.values.size() > 1;
  parallel_for(sweep.values.size(), scenario.workers, [&](std::size_t i) {
    SweepRow& row = result.rows[i];
    row.value = sweep.values[i];
    try {
      Scenario point = scenario.with_parameter(sweep.parameter, row.value);
      point.strategy = Strategy::optimal;
      if (parallel_points) point.solver.workers = 1;
      const Network net = point.build_network();
      point.resolved_params().validate(net.groups());
      const ScenarioSummary s = evaluate(point).summary;
      row.j_opt = s.j;
      row.j_static = *s.j_static;
      row.j_bang = *s.j_bang;
      row.j_none = s.j_none;
      row.improvement_static = improvement(row.j_opt, row.j_static);
      row.improvement_bang = improvement(row.j_opt, row.j_bang);
      row.spend_residual = std::abs(s.spend - s.budget) / std::max(s.budget, 1e-12);
      row.kkt_residual = s.solution->kkt_residual;
      row.iterations = s.solution->iterations;
      row.converged = s.solution->converged;
    } catch (const std::exception& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.j_opt = row.j_static = row.j_bang = row.j_none = nan;
      row.improvement_static = row.improvement_bang = nan;
      row.spend_residual = row.kkt_residual = nan;
      row.error = e.what();
    }
  });
  return result;
}

RunOutcome run_sweep(const Scenario& scenario) {
  const SweepResult result = compute_sweep(scenario);
  const auto dir = output_directory(scenario);
  CsvTable table({"value", "J_opt", "J_static", "J_bang", "J_none", "improvement_static",
                  "improvement_bang", "spend_residual", "kkt_residual", "iterations", "converged",
                  "failed"});
  json rows = json::array();
  bool any_failed = false;
  for (const auto& r : result.rows) {
    table.add_row({r.value, r.j_opt, r.j_static, r.j_bang, r.j_none, r.improvement_static,
                   r.improvement_bang, r.spend_residual, r.kkt_residual, double(r.iterations),
                   r.converged ? 1.0 : 0.0, r.error.empty() ? 0.0 : 1.0});
    any_failed = any_failed || !r.error.empty();
    json row{{"value", r.value}, {"converged", r.converged}};
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(row);
  }
  const auto csv_path = dir / "sweep.csv";
  const auto json_path = dir / "sweep.json";
  write_file_atomic(csv_path, table.str());
  write_file_atomic(json_path, json{{"name", scenario.name},
                                    {"parameter", result.parameter},
                                    {"network", network_json(scenario.network)},
                                    {"groups", scenario.groups},
                                    {"points", rows}}
                                       .dump(2) +
                                   "\n");
  RunOutcome out{ExitCode::ok, "", {csv_path, json_path}};
  if (any_failed) {
    out.exit_code = ExitCode::failure;
    out.message = "one or more sweep points failed (see sweep.json)";
  }
  return out;
}

ValidationResult compute_validation(const Scenario& scenario) {
  const Evaluated ev = evaluate(scenario);
  EnsembleSpec spec;
  spec.n_nodes = scenario.simulation.nodes;
  spec.n_runs = scenario.simulation.runs;
  spec.dt = scenario.simulation.dt;
  spec.seed = scenario.seed;
  spec.workers = scenario.workers;

  ValidationResult out;
  out.simulated = ensemble(ev.net, ev.params, ev.schedule, spec);
  for (std::size_t n = 0; n < ev.trajectory.grid().points(); ++n) {
    out.mean_field.push_back(ev.trajectory.total(n));
    out.sup_deviation =
        std::max(out.sup_deviation, std::abs(out.simulated.mean[n] - out.mean_field[n]));
  }
  return out;
}

RunOutcome run_validation(const Scenario& scenario) {
  const ValidationResult v = compute_validation(scenario);
  const auto dir = output_directory(scenario);
  CsvTable table({"t", "mean_i", "std_i", "mean_field_i"});
  for (std::size_t n = 0; n < v.mean_field.size(); ++n)
    table.add_row({v.simulated.times[n], v.simulated.mean[n], v.simulated.stddev[n], v.mean_field[n]});
  const auto csv_path = dir / "validation.csv";
  const auto json_path = dir / "validation.json";
  write_file_atomic(csv_path, table.str());
  write_file_atomic(json_path, json{{"name", scenario.name},
                                    {"network", network_json(scenario.network)},
                                    {"nodes", scenario.simulation.nodes},
                                    {"runs", scenario.simulation.runs},
                                    {"sup_deviation", v.sup_deviation},
                                    {"final_mean_i", v.simulated.mean.back()},
                                    {"final_mean_field_i", v.mean_field.back()}}
                                       .dump(2) +
                                   "\n");
  return {ExitCode::ok, "sup-norm deviation " + format_double(v.sup_deviation),
          {csv_path, json_path}};
}

RunOutcome run_baseline(const Scenario& scenario) {
  const Network net = scenario.build_network();
  const ModelParams params = scenario.resolved_params();
  const TimeGrid grid = scenario.grid();

  const ControlSchedule none = no_control(net.groups(), grid);
  const auto st = static_strategy(params, net, grid);
  const auto bb = bang_bang_strategy(params, net, grid);
  const Trajectory t_none = integrate_heun(params, none, net);
  const Trajectory t_static = integrate_heun(params, st.schedule, net);
  const Trajectory t_bang = integrate_heun(params, bb.schedule, net);

  // static and bang-bang act identically on every group, so group 1 is representative
  CsvTable table({"t", "u_static", "v_static", "u_bang", "v_bang", "i_none", "i_static", "i_bang"});
  for (std::size_t n = 0; n < grid.points(); ++n)
    table.add_row({grid.time(n), st.schedule.u(0, n), st.schedule.v(0, n), bb.schedule.u(0, n),
                   bb.schedule.v(0, n), t_none.total(n), t_static.total(n), t_bang.total(n)});

  const auto dir = output_directory(scenario);
  const auto csv_path = dir / "baseline.csv";
  const auto json_path = dir / "baseline.json";
  const auto pmf_path = dir / "degree_pmf.csv";
  const auto cdf_path = dir / "degree_cdf.csv";
  write_file_atomic(csv_path, table.str());
  write_file_atomic(
      json_path,
      json{{"name", scenario.name},
           {"network", network_json(scenario.network)},
           {"mean_degree", net.dist.mean_degree()},
           {"group_boundaries", std::vector<int>(net.partition.boundaries().begin(),
                                                 net.partition.boundaries().end())},
           {"group_masses", std::vector<double>(net.partition.masses().begin(),
                                                net.partition.masses().end())},
           {"group_mean_degrees", group_mean_degrees(net.dist, net.partition)},
           {"budget", params.budget},
           {"J_none", objective(t_none, net.dist)},
           {"J_static", objective(t_static, net.dist)},
           {"J_bang", objective(t_bang, net.dist)},
           {"kappa", st.kappa},
           {"tau", bb.tau}}
              .dump(2) +
          "\n");
  write_degree_csv(net.dist, pmf_path, cdf_path);
  return {ExitCode::ok, "", {csv_path, json_path, pmf_path, cdf_path}};
}

} // namespace campaign
