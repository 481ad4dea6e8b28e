#pragma once

#include "campaign/degree_model.hpp"
#include "campaign/dynamics.hpp"
#include "campaign/netsim.hpp"
#include "campaign/optimizer.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace campaign {

class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NetworkSpec {
  std::string kind = "power_law"; // "poisson" | "power_law"
  double lambda = 23.60;
  double gamma = 3.0;
  int k_min = 13;
  int k_max = 300;

  DegreeDistribution build() const;

  /// Named networks: "ER" (Poisson 23.60 on [1, 60]), "PL2" (gamma 2 on
  /// [6, 300]), "PL3" (gamma 3 on [13, 300]).
  static NetworkSpec preset(const std::string& name);
};

enum class Strategy { optimal, static_control, bang_bang, none };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct SweepSpec {
  std::string parameter; // one of B, d, beta, b_hat_2, i0
  std::vector<double> values;
};

struct SimulationSpec {
  std::size_t nodes = 10000;
  int runs = 20;
  double dt = 0.0; // 0: EnsembleSpec default
};

/// One experiment. An empty config reproduces the default PL3, M = 3 setup.
struct Scenario {
  std::string name = "scenario";
  NetworkSpec network = NetworkSpec::preset("PL3");
  int groups = 3;
  int grid_points = 51;
  ModelParams params = ModelParams::defaults(3);
  /// Budget as a fraction of u_max^2 T, used when no absolute budget is set.
  double budget_normalized = 0.125;
  bool budget_absolute = false;
  Strategy strategy = Strategy::optimal;
  SolverOptions solver;
  std::optional<SweepSpec> sweep;
  SimulationSpec simulation;
  std::filesystem::path output_dir = "results";
  std::uint64_t seed = 1;
  int workers = 0;

  TimeGrid grid() const { return TimeGrid(params.horizon, grid_points - 1); }
  Network build_network() const;
  /// Params with the budget resolved against u_max and T.
  ModelParams resolved_params() const;
  /// Copy with one sweep parameter set to `value`.
  Scenario with_parameter(const std::string& name, double value) const;
};

/// Parses and validates a JSON scenario; throws ConfigError on any problem.
Scenario parse_scenario(const std::string& json_text);
Scenario load_scenario(const std::filesystem::path& path);

/// Output directory after applying the CAMPAIGN_OUTPUT_ROOT override.
std::filesystem::path output_directory(const Scenario& scenario);

struct ScenarioSummary {
  std::string strategy;
  double j = 0.0;
  double spend = 0.0;
  double budget = 0.0;
  double j_none = 0.0;
  std::optional<double> j_static;
  std::optional<double> j_bang;
  std::optional<double> kappa;
  std::optional<double> tau;
  std::vector<double> group_shares;
  double wom_share = 0.0;
  std::optional<OptimalSolution> solution;
  double seconds = 0.0;
};

/// Exit codes shared by the CLI entry points.
enum ExitCode : int { ok = 0, not_converged = 2, invalid_config = 3, infeasible = 4, failure = 5 };

struct RunOutcome {
  int exit_code = ExitCode::ok;
  std::string message;
  std::vector<std::filesystem::path> written;
};

/// `solve`: runs the configured strategy and writes schedule, trajectory,
/// resource-rate CSVs and summary.json (trajectory only for strategy none).
RunOutcome run_scenario(const Scenario& scenario);
ScenarioSummary evaluate_scenario(const Scenario& scenario);

struct SweepRow {
  double value = 0.0;
  double j_opt = 0.0;
  double j_static = 0.0;
  double j_bang = 0.0;
  double j_none = 0.0;
  double improvement_static = 0.0; // percent
  double improvement_bang = 0.0;
  double spend_residual = 0.0;     // relative
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string error;
};

struct SweepResult {
  std::string parameter;
  std::vector<SweepRow> rows;
};

SweepResult compute_sweep(const Scenario& scenario);
RunOutcome run_sweep(const Scenario& scenario);

struct ValidationResult {
  EnsembleResult simulated;
  std::vector<double> mean_field;
  double sup_deviation = 0.0;
};

/// Monte Carlo ensemble against the mean-field trajectory of the scenario's
/// strategy schedule.
ValidationResult compute_validation(const Scenario& scenario);
RunOutcome run_validation(const Scenario& scenario);

/// `baseline`: no-control, static and bang-bang schedules plus the degree
/// distribution tables.
RunOutcome run_baseline(const Scenario& scenario);

} // namespace campaign
