#pragma once

#include "campaign/dynamics.hpp"

#include <functional>
#include <stdexcept>

namespace campaign {

class InfeasibleBudget : public std::domain_error {
public:
  InfeasibleBudget(double budget, double full_spend);
  double budget() const { return budget_; }
  double full_spend() const { return full_spend_; }

private:
  double budget_;
  double full_spend_;
};

struct BisectionResult {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
};

/// Finds x in [lo, hi] with |f(x) - target| <= rel_tol * max(|target|, 1e-12)
/// for a nondecreasing f with f(lo) <= target <= f(hi).
BisectionResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                                  double target, double rel_tol = 1e-8, int max_iter = 200);

ControlSchedule no_control(std::size_t groups, const TimeGrid& grid);

struct StaticStrategy {
  ControlSchedule schedule;
  double kappa;
};

/// u = kappa u_max, v = kappa v_max everywhere, kappa calibrated so the
/// spend equals the budget.
StaticStrategy static_strategy(const ModelParams& params, const Network& net,
                               const TimeGrid& grid);

struct BangBangStrategy {
  ControlSchedule schedule;
  double tau;
};

/// Full intensity on every group until the switch time tau, zero after.
/// The sample straddled by tau keeps the covered fraction of its full
/// resource rate (u scaled by sqrt(phi), v by cbrt(phi)).
ControlSchedule bang_bang_schedule(const ModelParams& params, std::size_t groups,
                                   const TimeGrid& grid, double tau);

BangBangStrategy bang_bang_strategy(const ModelParams& params, const Network& net,
                                    const TimeGrid& grid);

/// Multiplies every control by a common factor in [0, 1] chosen by
/// bisection so the schedule spends exactly the budget.
ControlSchedule rescale_to_budget(const ControlSchedule& shape, const ModelParams& params,
                                  const Network& net);

} // namespace campaign
