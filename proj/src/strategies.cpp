#include "campaign/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace campaign {

namespace {

double spend_of(const ControlSchedule& schedule, const ModelParams& params, const Network& net) {
  return budget_spend(integrate_heun(params, schedule, net), schedule, params, net);
}

void require_feasible(double budget, double full) {
  // the full-intensity spend is itself a bisection endpoint, allow rounding
  if (budget > full * (1.0 + 1e-12)) throw InfeasibleBudget(budget, full);
}

} // namespace

InfeasibleBudget::InfeasibleBudget(double budget, double full_spend)
    : std::domain_error("budget " + std::to_string(budget) +
                        " exceeds full-intensity spend " + std::to_string(full_spend)),
      budget_(budget), full_spend_(full_spend) {}

BisectionResult bisect_increasing(const std::function<double(double)>& f, double lo, double hi,
                                  double target, double rel_tol, int max_iter) {
  const double tol = rel_tol * std::max(std::abs(target), 1e-12);
  BisectionResult best{lo, f(lo), 0};
  if (std::abs(best.value - target) <= tol) return best;
  BisectionResult upper{hi, f(hi), 0};
  if (std::abs(upper.value - target) <= tol) return upper;
  if (best.value > target || upper.value < target)
    throw std::domain_error("bisection target is not bracketed");

  for (int it = 1; it <= max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double value = f(mid);
    if (std::abs(value - target) < std::abs(best.value - target)) best = {mid, value, it};
    best.iterations = it;
    if (std::abs(value - target) <= tol || mid <= lo || mid >= hi) break;
    if (value < target)
      lo = mid;
    else
      hi = mid;
  }
  return best;
}

ControlSchedule no_control(std::size_t groups, const TimeGrid& grid) {
  return ControlSchedule(grid, groups);
}

StaticStrategy static_strategy(const ModelParams& params, const Network& net,
                               const TimeGrid& grid) {
  const std::size_t groups = net.groups();
  if (params.budget == 0.0) return {no_control(groups, grid), 0.0};
  require_feasible(params.budget, full_intensity_spend(params, net, grid));

  auto spend_at = [&](double kappa) {
    return spend_of(ControlSchedule::constant(grid, groups, kappa * params.u_max,
                                              kappa * params.v_max),
                    params, net);
  };
  const BisectionResult root = bisect_increasing(spend_at, 0.0, 1.0, params.budget);
  return {ControlSchedule::constant(grid, groups, root.x * params.u_max, root.x * params.v_max),
          root.x};
}

ControlSchedule bang_bang_schedule(const ModelParams& params, std::size_t groups,
                                   const TimeGrid& grid, double tau) {
  ControlSchedule schedule(grid, groups);
  const double dt = grid.dt();
  for (std::size_t n = 0; n < grid.points(); ++n) {
    const double t = grid.time(n);
    double coverage = 0.0;
    if (t <= tau)
      coverage = 1.0;
    else if (n > 0 && grid.time(n - 1) < tau)
      coverage = (tau - grid.time(n - 1)) / dt;
    if (coverage <= 0.0) continue;
    const double u = std::min(params.u_max, std::sqrt(coverage) * params.u_max);
    const double v = std::min(params.v_max, std::cbrt(coverage) * params.v_max);
    for (std::size_t m = 0; m < groups; ++m) {
      schedule.u(m, n) = u;
      schedule.v(m, n) = v;
    }
  }
  return schedule;
}

BangBangStrategy bang_bang_strategy(const ModelParams& params, const Network& net,
                                    const TimeGrid& grid) {
  const std::size_t groups = net.groups();
  if (params.budget == 0.0) return {bang_bang_schedule(params, groups, grid, 0.0), 0.0};
  require_feasible(params.budget, full_intensity_spend(params, net, grid));

  auto spend_at = [&](double tau) {
    return spend_of(bang_bang_schedule(params, groups, grid, tau), params, net);
  };
  const BisectionResult root =
      bisect_increasing(spend_at, 0.0, grid.horizon(), params.budget);
  return {bang_bang_schedule(params, groups, grid, root.x), root.x};
}

ControlSchedule rescale_to_budget(const ControlSchedule& shape, const ModelParams& params,
                                  const Network& net) {
  auto scaled = [&](double factor) {
    ControlSchedule s = shape;
    for (double& x : s.decision_vector()) x *= factor;
    return s;
  };
  if (params.budget == 0.0) return scaled(0.0);
  const double full = spend_of(shape, params, net);
  if (params.budget > full * (1.0 + 1e-12)) throw InfeasibleBudget(params.budget, full);
  auto spend_at = [&](double factor) { return spend_of(scaled(factor), params, net); };
  return scaled(bisect_increasing(spend_at, 0.0, 1.0, params.budget).x);
}

} // namespace campaign
