// campaign: solve, sweep, validate and baseline runs driven by a JSON scenario.
#include "campaign/scenario.hpp"
#include "campaign/strategies.hpp"

#include "CLI11.hpp"

#include <functional>
#include <iostream>

namespace {

using campaign::ExitCode;
using campaign::RunOutcome;
using campaign::Scenario;

int dispatch(const std::string& config, const std::function<RunOutcome(const Scenario&)>& run) {
  Scenario scenario;
  try {
    scenario = campaign::load_scenario(config);
  } catch (const campaign::ConfigError& e) {
    std::cerr << "campaign: invalid config: " << e.what() << '\n';
    return ExitCode::invalid_config;
  }
  try {
    const RunOutcome out = run(scenario);
    for (const auto& path : out.written) std::cout << path.string() << '\n';
    if (!out.message.empty())
      (out.exit_code == ExitCode::ok ? std::cout : std::cerr) << "campaign: " << out.message << '\n';
    return out.exit_code;
  } catch (const campaign::InfeasibleBudget& e) {
    std::cerr << "campaign: infeasible budget: " << e.what() << '\n';
    return ExitCode::infeasible;
  } catch (const campaign::ConfigError& e) {
    std::cerr << "campaign: invalid config: " << e.what() << '\n';
    return ExitCode::invalid_config;
  } catch (const std::exception& e) {
    std::cerr << "campaign: " << e.what() << '\n';
    return ExitCode::failure;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained campaign control for SI spreading on degree-heterogeneous networks.\n"
               "Set CAMPAIGN_OUTPUT_ROOT to redirect every output directory."};
  app.require_subcommand(1);

  std::string config;
  std::function<RunOutcome(const Scenario&)> run;
  auto add = [&](const char* name, const char* help, RunOutcome (*fn)(const Scenario&)) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("config", config, "scenario JSON file")->required()->check(CLI::ExistingFile);
    sub->callback([&run, fn] { run = fn; });
  };
  add("solve", "run the configured strategy and write schedule, trajectory and summary",
      campaign::run_scenario);
  add("sweep", "solve once per value of the configured sweep parameter", campaign::run_sweep);
  add("validate", "compare a Monte Carlo ensemble with the mean-field trajectory",
      campaign::run_validation);
  add("baseline", "write the no-control, static and bang-bang baselines",
      campaign::run_baseline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ExitCode::invalid_config;
  }
  return dispatch(config, run);
}
