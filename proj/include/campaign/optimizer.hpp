#pragma once

#include "campaign/dynamics.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace campaign {

/// Problem (max J s.t. spend = B, box bounds) transcribed onto the control
/// grid. Decision vector layout: (u_1(t_0..t_N), ..., u_M(.), v_1(.), ..., v_M(.)).
class NlpProblem {
public:
  NlpProblem(ModelParams params, Network net, TimeGrid grid);

  std::size_t size() const { return lower_.size(); }
  std::span<const double> lower() const { return lower_; }
  std::span<const double> upper() const { return upper_; }

  const ModelParams& params() const { return params_; }
  const Network& network() const { return net_; }
  const TimeGrid& grid() const { return grid_; }

  ControlSchedule decode(std::span<const double> x) const;

  /// J of the decoded schedule.
  double objective(std::span<const double> x) const;
  /// spend - B of the decoded schedule.
  double constraint(std::span<const double> x) const;

  struct Values {
    double objective = 0.0;
    double constraint = 0.0;
  };
  Values evaluate(std::span<const double> x) const;

  /// Values plus w_objective * dJ/dx + w_constraint * dspend/dx from a single
  /// reverse sweep through the Heun recursion and the spend sum.
  Values weighted_gradient(std::span<const double> x, double w_objective, double w_constraint,
                           std::span<double> grad) const;

private:
  ModelParams params_;
  Network net_;
  TimeGrid grid_;
  std::vector<double> lower_;
  std::vector<double> upper_;
};

NlpProblem transcribe(const ModelParams& params, const Network& net, const TimeGrid& grid);

struct ProblemGradients {
  std::vector<double> objective;
  std::vector<double> constraint;
};

/// Exact gradients of the discrete objective and of the spend constraint.
ProblemGradients gradient(const NlpProblem& problem, std::span<const double> x);

struct SolverOptions {
  double tol_grad = 1e-6; // multiplied by sqrt(problem size)
  double tol_con = 1e-8;  // relative to max(B, 1e-12)
  int max_outer = 40;
  int max_inner = 3000;
  int n_starts = 3;
  std::uint64_t seed = 1;
  int workers = 0; // 0: hardware concurrency
};

struct OptimalSolution {
  ControlSchedule schedule;
  double objective = 0.0;
  double spend = 0.0;
  double multiplier = 0.0; // dJ/dB at the solution
  int iterations = 0;
  int outer_iterations = 0;
  double kkt_residual = 0.0;
  bool converged = false;
  int start_index = 0;

  double relative_residual(double budget) const;
};

/// Augmented Lagrangian on the budget equality with a projected L-BFGS
/// inner solver on the boxes; multi-start, returns the best J.
OptimalSolution solve(const NlpProblem& problem, const SolverOptions& opts = {});

/// Single start from `x0`.
OptimalSolution solve_from(const NlpProblem& problem, std::span<const double> x0,
                           const SolverOptions& opts);

/// Per-group resource consumption of a schedule and its integrated shares.
struct ResourceAllocation {
  ResourceRates rates;
  std::vector<double> direct_total; // per group, right-endpoint sum times dt
  std::vector<double> wom_total;

  double total() const;
  double group_total(std::size_t m) const { return direct_total[m] + wom_total[m]; }
  double group_share(std::size_t m) const { return group_total(m) / total(); }
  double wom_share() const;
};

ResourceAllocation resource_allocation_rates(const ControlSchedule& schedule,
                                             const Trajectory& traj, const ModelParams& params,
                                             const Network& net);

} // namespace campaign
