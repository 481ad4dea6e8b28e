#include "doctest.h"

#include "campaign/scenario.hpp"
#include "campaign/strategies.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace campaign;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "campaign_scenario_tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Scenario with_dir(const std::string& body, const fs::path& dir) {
  auto j = nlohmann::json::parse(body);
  j["output_dir"] = dir.string();
  return parse_scenario(j.dump());
}

std::vector<std::vector<double>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

} // namespace

TEST_CASE("config defaults") {
  const auto s = parse_scenario("{}");
  CHECK(s.network.kind == "power_law");
  CHECK(s.network.gamma == 3.0);
  CHECK(s.network.k_min == 13);
  CHECK(s.groups == 3);
  CHECK(s.grid_points == 51);
  CHECK(s.strategy == Strategy::optimal);
  const auto p = s.resolved_params();
  CHECK(p.budget == doctest::Approx(0.0018));
  CHECK(p.alpha == 0.5);
  CHECK(p.profile.beta == 0.12);
  CHECK(p.profile.beta_max == 0.24);
  CHECK(p.d == 0.5);
  CHECK(!s.sweep);
}

TEST_CASE("config parsing") {
  const auto s = parse_scenario(R"({
    "name": "er10", "network": "ER", "groups": 2, "grid_points": 26,
    "model": {"profile": "decreasing", "alpha": 0.4, "b_hat": [1, 3], "c_hat": 2, "B_normalized": 0.25},
    "strategy": "bang_bang", "solver": {"n_starts": 2, "tol_grad": 1e-7},
    "sweep": {"parameter": "i0", "values": [0.01, 0.05]},
    "simulation": {"nodes": 500, "runs": 3}, "seed": 9, "workers": 2})");
  CHECK(s.network.kind == "poisson");
  CHECK(s.network.k_max == 60);
  CHECK(s.params.profile.kind == ProfileKind::linear_decreasing);
  CHECK(s.params.b_hat == std::vector<double>{1, 3});
  CHECK(s.params.c_hat == std::vector<double>{2, 2});
  CHECK(s.resolved_params().budget == doctest::Approx(0.25 * 0.0144));
  CHECK(s.strategy == Strategy::bang_bang);
  CHECK(s.solver.n_starts == 2);
  CHECK(s.solver.seed == 9);
  CHECK(s.solver.workers == 2);
  CHECK(s.sweep->values.size() == 2);
  CHECK(s.simulation.runs == 3);
  CHECK(s.grid().intervals() == 25);
  CHECK(s.output_dir == fs::path("results") / "er10");

  const auto custom = parse_scenario(R"({"network": {"kind": "power_law", "gamma": 2.5, "k_min": 4, "k_max": 80},
                                         "model": {"B": 0.001}})");
  CHECK(custom.network.gamma == 2.5);
  CHECK(custom.resolved_params().budget == 0.001);
  CHECK(parse_scenario(R"({"network": {"preset": "PL2", "k_max": 200}})").network.k_max == 200);
}

TEST_CASE("config errors") {
  const char* bad[] = {
      "not json",
      "[]",
      R"({"unknown": 1})",
      R"({"model": {"betta": 0.1}})",
      R"({"network": "XY"})",
      R"({"network": {"kind": "lognormal"}})",
      R"({"groups": 0})",
      R"({"groups": 400})",
      R"({"grid_points": 1})",
      R"({"strategy": "greedy"})",
      R"({"model": {"b_hat": [1, 2]}})",
      R"({"model": {"i0": 2}})",
      R"({"model": {"profile": "sawtooth"}})",
      R"({"model": {"B": 0.1, "B_normalized": 0.2}})",
      R"({"model": {"alpha": "half"}})",
      R"({"model": {"alpha": 1.0}})",
      R"({"sweep": {"parameter": "gamma", "values": [1]}})",
      R"({"sweep": {"parameter": "B", "values": []}})",
      R"({"groups": 1, "sweep": {"parameter": "b_hat_2", "values": [2]}})",
      R"({"solver": {"tol_grad": 0}})",
      R"({"simulation": {"runs": 0}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_scenario(text), ConfigError);
  }
  CHECK_THROWS_AS(load_scenario("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("sweep parameters") {
  const auto s = parse_scenario(R"({"groups": 2})");
  CHECK(s.with_parameter("B", 0.5).resolved_params().budget == doctest::Approx(0.0072));
  CHECK(s.with_parameter("d", 0.9).params.d == 0.9);
  CHECK(s.with_parameter("beta", 0.2).params.beta(0.3) == 0.2);
  CHECK(s.with_parameter("i0", 0.05).params.i0 == 0.05);
  const auto skew = s.with_parameter("b_hat_2", 4.0).params;
  CHECK(skew.b_hat == std::vector<double>{1, 4});
  CHECK(skew.c_hat == std::vector<double>{1, 4});
  CHECK_THROWS_AS(s.with_parameter("alpha", 0.1), ConfigError);
}

TEST_CASE("output root override") {
  auto s = parse_scenario(R"({"output_dir": "runs/a"})");
  ::setenv("CAMPAIGN_OUTPUT_ROOT", "/tmp/elsewhere", 1);
  CHECK(output_directory(s) == fs::path("/tmp/elsewhere/runs/a"));
  ::unsetenv("CAMPAIGN_OUTPUT_ROOT");
  CHECK(output_directory(s) == fs::path("runs/a"));
}

TEST_CASE("solve writes the full artifact set") {
  const auto dir = scratch("solve");
  const auto s = with_dir(R"({"network": "ER", "groups": 2})", dir);
  const auto out = run_scenario(s);
  CHECK(out.exit_code == ExitCode::ok);
  for (const char* f : {"schedule.csv", "trajectory.csv", "resource_rates.csv", "summary.json"})
    CHECK(fs::exists(dir / f));
  CHECK(!fs::exists(dir / "summary.json.tmp"));

  const auto summary = nlohmann::json::parse(slurp(dir / "summary.json"));
  const double j = summary["J"], js = summary["J_static"], jb = summary["J_bang"];
  CHECK(std::abs(summary["improvement_static_pct"].get<double>() - 100 * (j - js) / js) <= 1e-9);
  CHECK(std::abs(summary["improvement_bang_pct"].get<double>() - 100 * (j - jb) / jb) <= 1e-9);
  CHECK(summary["solver"]["converged"] == true);
  CHECK(summary["spend_residual"].get<double>() <= 1e-6);
  CHECK(summary["shares"]["group"].size() == 2);

  const auto schedule = read_csv(dir / "schedule.csv");
  CHECK(schedule.size() == 51);
  CHECK(schedule[0].size() == 5);
  const auto rates = read_csv(dir / "resource_rates.csv");
  CHECK(rates.size() == 51);

  SUBCASE("rerun is byte-identical") {
    const auto first_traj = slurp(dir / "trajectory.csv");
    const auto first_sched = slurp(dir / "schedule.csv");
    const auto first_rates = slurp(dir / "resource_rates.csv");
    run_scenario(s);
    CHECK(slurp(dir / "trajectory.csv") == first_traj);
    CHECK(slurp(dir / "schedule.csv") == first_sched);
    CHECK(slurp(dir / "resource_rates.csv") == first_rates);
  }
}

TEST_CASE("strategy none writes only the trajectory") {
  const auto dir = scratch("none");
  const auto out = run_scenario(with_dir(R"({"network": "ER", "strategy": "none"})", dir));
  CHECK(out.exit_code == ExitCode::ok);
  CHECK(out.written.size() == 1);
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(!fs::exists(dir / "schedule.csv"));
  CHECK(!fs::exists(dir / "summary.json"));
  const auto rows = read_csv(dir / "trajectory.csv");
  CHECK(std::abs(rows.back()[1] - 0.040) <= 0.002);
}

TEST_CASE("baseline strategies through the scenario runner") {
  const auto dir = scratch("static");
  const auto s = with_dir(R"({"network": "PL3", "strategy": "static"})", dir);
  const auto summary = evaluate_scenario(s);
  CHECK(!summary.solution);
  CHECK(summary.j == doctest::Approx(*summary.j_static));
  CHECK(std::abs(summary.spend - summary.budget) / summary.budget <= 1e-8);
  CHECK(run_scenario(s).exit_code == ExitCode::ok);
  CHECK(nlohmann::json::parse(slurp(dir / "summary.json"))["solver"].is_null());
}

TEST_CASE("solver non-convergence still writes diagnostics") {
  const auto dir = scratch("capped");
  const auto s = with_dir(R"({"network": "PL2", "solver": {"max_outer": 1, "max_inner": 2, "n_starts": 1}})", dir);
  const auto out = run_scenario(s);
  CHECK(out.exit_code == ExitCode::not_converged);
  CHECK(!out.message.empty());
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(nlohmann::json::parse(slurp(dir / "summary.json"))["solver"]["converged"] == false);
}

TEST_CASE("infeasible budget") {
  const auto s = with_dir(R"({"network": "ER", "model": {"B_normalized": 50}})", scratch("infeasible"));
  CHECK_THROWS_AS(run_scenario(s), InfeasibleBudget);
}

TEST_CASE("sweeps") {
  SUBCASE("single value matches the solve summary") {
    const auto dir = scratch("sweep1");
    const auto s = with_dir(R"({"network": "ER", "groups": 2, "sweep": {"parameter": "B", "values": [0.125]}})", dir);
    const auto sweep = compute_sweep(s);
    const auto single = evaluate_scenario(s);
    REQUIRE(sweep.rows.size() == 1);
    const auto& row = sweep.rows[0];
    CHECK(row.j_opt == single.j);
    CHECK(row.j_static == *single.j_static);
    CHECK(row.j_bang == *single.j_bang);
    CHECK(row.j_none == single.j_none);
    CHECK(row.kkt_residual == single.solution->kkt_residual);
  }
  SUBCASE("failing points are recorded and the sweep continues") {
    const auto dir = scratch("sweep2");
    const auto s = with_dir(R"({"network": "ER", "groups": 2, "sweep": {"parameter": "B", "values": [0.1, 90, 0.2]}})", dir);
    const auto out = run_sweep(s);
    CHECK(out.exit_code == ExitCode::failure);
    const auto rows = read_csv(dir / "sweep.csv");
    REQUIRE(rows.size() == 3);
    CHECK(rows[0][11] == 0.0);
    CHECK(rows[1][11] == 1.0);
    CHECK(std::isnan(rows[1][1]));
    CHECK(rows[2][1] > rows[0][1]);
    for (const auto& r : {rows[0], rows[2]}) {
      CHECK(std::abs(r[5] - 100 * (r[1] - r[2]) / r[2]) <= 1e-9);
      CHECK(std::abs(r[6] - 100 * (r[1] - r[3]) / r[3]) <= 1e-9);
    }
    const auto meta = nlohmann::json::parse(slurp(dir / "sweep.json"));
    CHECK(meta["points"][1].contains("error"));
  }
  CHECK_THROWS_AS(compute_sweep(parse_scenario("{}")), ConfigError);
}

TEST_CASE("validation and baseline outputs") {
  SUBCASE("single run has a zero std column") {
    const auto dir = scratch("validate");
    const auto s = with_dir(R"({"network": "ER", "strategy": "none", "model": {"alpha": 1.0, "v_max": 0},
                                "simulation": {"nodes": 2000, "runs": 1}})", dir);
    const auto out = run_validation(s);
    CHECK(out.exit_code == ExitCode::ok);
    const auto rows = read_csv(dir / "validation.csv");
    CHECK(rows.size() == 51);
    for (const auto& r : rows) CHECK(r[2] == 0.0);
    CHECK(fs::exists(dir / "validation.json"));
  }
  SUBCASE("heavier tails spread further") {
    const auto er = compute_validation(parse_scenario(R"({"network": "ER", "strategy": "none", "simulation": {"nodes": 3000, "runs": 4}})"));
    const auto pl2 = compute_validation(parse_scenario(R"({"network": "PL2", "strategy": "none", "simulation": {"nodes": 3000, "runs": 4}})"));
    CHECK(pl2.simulated.mean.back() > er.simulated.mean.back());
  }
  SUBCASE("baseline tables") {
    const auto dir = scratch("baseline");
    const auto out = run_baseline(with_dir(R"({"network": "PL2"})", dir));
    CHECK(out.written.size() == 4);
    const auto rows = read_csv(dir / "baseline.csv");
    CHECK(rows.size() == 51);
    CHECK(rows[10][2] == doctest::Approx(rows[40][2]));
    const auto meta = nlohmann::json::parse(slurp(dir / "baseline.json"));
    CHECK(meta["J_static"].get<double>() >= meta["J_bang"].get<double>());
    CHECK(read_csv(dir / "degree_pmf.csv").size() == 295);
  }
}
