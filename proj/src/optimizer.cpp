#include "campaign/optimizer.hpp"

#include "campaign/parallel.hpp"
#include "campaign/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>

namespace campaign {

NlpProblem::NlpProblem(ModelParams params, Network net, TimeGrid grid)
    : params_(std::move(params)), net_(std::move(net)), grid_(grid) {
  params_.validate(net_.groups());
  const std::size_t half = net_.groups() * grid_.points();
  lower_.assign(2 * half, 0.0);
  upper_.assign(2 * half, params_.u_max);
  std::fill(upper_.begin() + static_cast<std::ptrdiff_t>(half), upper_.end(), params_.v_max);
}

ControlSchedule NlpProblem::decode(std::span<const double> x) const {
  return ControlSchedule(grid_, net_.groups(), x);
}

NlpProblem::Values NlpProblem::evaluate(std::span<const double> x) const {
  const ControlSchedule schedule = decode(x);
  const Trajectory traj = integrate_heun(params_, schedule, net_);
  return {campaign::objective(traj, net_.dist),
          budget_spend(traj, schedule, params_, net_) - params_.budget};
}

double NlpProblem::objective(std::span<const double> x) const { return evaluate(x).objective; }

double NlpProblem::constraint(std::span<const double> x) const { return evaluate(x).constraint; }

namespace {

/// Vector-Jacobian product of rhs_into with respect to the state, plus the
/// contributions to the controls at grid point n.
void rhs_vjp(std::span<const double> state, double beta, std::span<const double> u,
             std::span<const double> v, const ModelParams& params, const Network& net,
             std::span<const double> mu, std::span<double> out, std::span<double> grad,
             std::size_t n, std::size_t points) {
  const auto& q = net.neighbors.q;
  const auto& part = net.partition;
  const std::size_t groups = part.groups();

  double pressure = 0.0;
  double spread_adjoint = 0.0;
  for (std::size_t m = 0; m < groups; ++m) {
    double inner = 0.0;
    for (std::size_t l = part.first_index(m); l < part.last_index(m); ++l) inner += q[l] * state[l];
    pressure += (1.0 + v[m]) * inner;
  }
  const double ba = beta * params.alpha;
  for (std::size_t j = 0; j < state.size(); ++j)
    spread_adjoint += mu[j] * ba * net.dist.degree(j) * (1.0 - state[j]);

  for (std::size_t m = 0; m < groups; ++m) {
    double u_adjoint = 0.0;
    double inner = 0.0;
    for (std::size_t j = part.first_index(m); j < part.last_index(m); ++j) {
      const double k = net.dist.degree(j);
      out[j] = -mu[j] * (ba * k * pressure + u[m]) + spread_adjoint * q[j] * (1.0 + v[m]);
      u_adjoint += mu[j] * (1.0 - state[j]);
      inner += q[j] * state[j];
    }
    grad[m * points + n] += u_adjoint;
    grad[(groups + m) * points + n] += spread_adjoint * inner;
  }
}

} // namespace

NlpProblem::Values NlpProblem::weighted_gradient(std::span<const double> x, double w_objective,
                                                 double w_constraint,
                                                 std::span<double> grad) const {
  if (grad.size() != size()) throw std::invalid_argument("gradient buffer size mismatch");
  const ControlSchedule schedule = decode(x);
  const Trajectory traj = integrate_heun(params_, schedule, net_);
  const Values values{campaign::objective(traj, net_.dist),
                      budget_spend(traj, schedule, params_, net_) - params_.budget};
  std::fill(grad.begin(), grad.end(), 0.0);

  const std::size_t classes = net_.classes();
  const std::size_t groups = net_.groups();
  const std::size_t points = grid_.points();
  const double dt = grid_.dt();
  const auto pmf = net_.dist.pmf();
  const auto& r = net_.neighbors.r;
  const auto masses = net_.partition.masses();

  std::vector<double> coef(groups);
  // lambda += w_c * d(spend term at n)/d(i^n)
  auto add_spend_state = [&](std::size_t n, std::vector<double>& lambda) {
    if (w_constraint == 0.0) return;
    const double beta = params_.beta(grid_.time(n));
    const double sbar = traj.neighbor_susceptible(n);
    double cross = 0.0;
    for (std::size_t m = 0; m < groups; ++m) {
      const double v = schedule.v(m, n);
      coef[m] = params_.alpha * beta * params_.d * params_.c_hat[m] * v * v * v;
      cross += coef[m] * traj.group_link_infected(m, n);
    }
    const double scale = w_constraint * dt;
    for (std::size_t m = 0; m < groups; ++m)
      for (std::size_t j = net_.partition.first_index(m); j < net_.partition.last_index(m); ++j)
        lambda[j] += scale * (coef[m] * net_.dist.degree(j) * pmf[j] * sbar - cross * r[j]);
  };
  auto add_spend_controls = [&](std::size_t n) {
    if (w_constraint == 0.0) return;
    const double beta = params_.beta(grid_.time(n));
    const double sbar = traj.neighbor_susceptible(n);
    const double scale = w_constraint * dt;
    for (std::size_t m = 0; m < groups; ++m) {
      const double u = schedule.u(m, n);
      const double v = schedule.v(m, n);
      grad[m * points + n] += scale * 2.0 * masses[m] * params_.b_hat[m] * u;
      grad[(groups + m) * points + n] += scale * 3.0 * params_.alpha * beta * params_.d *
                                         params_.c_hat[m] * v * v *
                                         traj.group_link_infected(m, n) * sbar;
    }
  };

  std::vector<double> lambda(classes), masked(classes), mu(classes), rho(classes), sigma(classes);
  std::vector<double> left(classes), right(classes), predicted(classes);
  std::vector<double> u_prev(groups), v_prev(groups), u_next(groups), v_next(groups);

  for (std::size_t j = 0; j < classes; ++j) lambda[j] = w_objective * pmf[j];
  add_spend_state(points - 1, lambda);

  for (std::size_t n = points - 1; n >= 1; --n) {
    add_spend_controls(n);
    const auto prev = traj.state(n - 1);
    schedule.controls_at(n - 1, u_prev, v_prev);
    schedule.controls_at(n, u_next, v_next);
    const double beta_prev = params_.beta(grid_.time(n - 1));
    const double beta_next = params_.beta(grid_.time(n));

    // replay the forward step with identical arithmetic
    rhs_into(prev, beta_prev, u_prev, v_prev, params_, net_, left);
    for (std::size_t j = 0; j < classes; ++j) predicted[j] = prev[j] + dt * left[j];
    rhs_into(predicted, beta_next, u_next, v_next, params_, net_, right);
    for (std::size_t j = 0; j < classes; ++j) {
      const double raw = prev[j] + 0.5 * dt * (left[j] + right[j]);
      masked[j] = (raw >= 0.0 && raw <= 1.0) ? lambda[j] : 0.0;
      mu[j] = 0.5 * dt * masked[j];
    }
    rhs_vjp(predicted, beta_next, u_next, v_next, params_, net_, mu, rho, grad, n, points);
    for (std::size_t j = 0; j < classes; ++j) mu[j] = 0.5 * dt * masked[j] + dt * rho[j];
    rhs_vjp(prev, beta_prev, u_prev, v_prev, params_, net_, mu, sigma, grad, n - 1, points);
    for (std::size_t j = 0; j < classes; ++j) lambda[j] = masked[j] + rho[j] + sigma[j];
    if (n - 1 >= 1) add_spend_state(n - 1, lambda);
  }
  return values;
}

NlpProblem transcribe(const ModelParams& params, const Network& net, const TimeGrid& grid) {
  return NlpProblem(params, net, grid);
}

ProblemGradients gradient(const NlpProblem& problem, std::span<const double> x) {
  ProblemGradients out;
  out.objective.resize(problem.size());
  out.constraint.resize(problem.size());
  problem.weighted_gradient(x, 1.0, 0.0, out.objective);
  problem.weighted_gradient(x, 0.0, 1.0, out.constraint);
  return out;
}

double OptimalSolution::relative_residual(double budget) const {
  return std::abs(spend - budget) / std::max(budget, 1e-12);
}

namespace {

/// Solver state in scaled coordinates y in [0, 1]^n, x = scale * y, with the
/// constraint expressed relative to the budget.
class ScaledProblem {
public:
  explicit ScaledProblem(const NlpProblem& problem)
      : problem_(problem), scale_(problem.upper().begin(), problem.upper().end()),
        budget_scale_(std::max(problem.params().budget, 1e-12)), x_(problem.size()) {}

  std::size_t size() const { return scale_.size(); }

  std::vector<double> to_scaled(std::span<const double> x) const {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i)
      y[i] = scale_[i] > 0.0 ? std::clamp(x[i] / scale_[i], 0.0, 1.0) : 0.0;
    return y;
  }
  std::span<const double> to_unscaled(std::span<const double> y) {
    for (std::size_t i = 0; i < y.size(); ++i) x_[i] = scale_[i] * y[i];
    return x_;
  }

  struct Point {
    double objective = 0.0;
    double residual = 0.0; // (spend - B) / B
  };

  Point values(std::span<const double> y) {
    const auto v = problem_.evaluate(to_unscaled(y));
    return {v.objective, v.constraint / budget_scale_};
  }

  /// grad of -J + weight * residual, in scaled coordinates.
  Point gradient(std::span<const double> y, double weight, std::span<double> grad) {
    return combined_gradient(y, -1.0, weight, grad);
  }

  /// grad of the scaled residual alone.
  Point residual_gradient(std::span<const double> y, std::span<double> grad) {
    return combined_gradient(y, 0.0, 1.0, grad);
  }

private:
  Point combined_gradient(std::span<const double> y, double w_objective, double w_residual,
                          std::span<double> grad) {
    const auto v =
        problem_.weighted_gradient(to_unscaled(y), w_objective, w_residual / budget_scale_, grad);
    for (std::size_t i = 0; i < grad.size(); ++i) grad[i] *= scale_[i];
    return {v.objective, v.constraint / budget_scale_};
  }

public:

  double budget_scale() const { return budget_scale_; }

private:
  const NlpProblem& problem_;
  std::vector<double> scale_;
  double budget_scale_;
  std::vector<double> x_;
};

double projected_gradient_norm(std::span<const double> y, std::span<const double> g) {
  double sum = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double step = std::clamp(y[i] - g[i], 0.0, 1.0) - y[i];
    sum += step * step;
  }
  return std::sqrt(sum);
}

double augmented(const ScaledProblem::Point& p, double lambda, double rho) {
  return -p.objective + lambda * p.residual + 0.5 * rho * p.residual * p.residual;
}

struct InnerResult {
  ScaledProblem::Point point;
  double pg_norm = 0.0;
  int iterations = 0;
};

/// Limited-memory curvature pairs for the two-loop recursion.
class LbfgsMemory {
public:
  explicit LbfgsMemory(std::size_t capacity) : capacity_(capacity) {}

  void clear() {
    s_.clear();
    y_.clear();
    rho_.clear();
  }

  void push(std::vector<double> s, std::vector<double> y) {
    const double sy = std::inner_product(s.begin(), s.end(), y.begin(), 0.0);
    const double yy = std::inner_product(y.begin(), y.end(), y.begin(), 0.0);
    const double ss = std::inner_product(s.begin(), s.end(), s.begin(), 0.0);
    if (!(sy > 1e-10 * std::sqrt(ss * yy))) return;
    if (s_.size() == capacity_) {
      s_.pop_front();
      y_.pop_front();
      rho_.pop_front();
    }
    s_.push_back(std::move(s));
    y_.push_back(std::move(y));
    rho_.push_back(1.0 / sy);
  }

  /// d = -H g restricted to the coordinates where `free` is set.
  void direction(std::span<const double> g, const std::vector<char>& free,
                 std::vector<double>& d) const {
    const std::size_t n = g.size();
    for (std::size_t i = 0; i < n; ++i) d[i] = free[i] ? -g[i] : 0.0;
    const std::size_t k = s_.size();
    std::vector<double> alpha(k);
    auto dot_free = [&](const std::vector<double>& a, const std::vector<double>& b) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        if (free[i]) sum += a[i] * b[i];
      return sum;
    };
    for (std::size_t j = k; j-- > 0;) {
      alpha[j] = rho_[j] * dot_free(s_[j], d);
      for (std::size_t i = 0; i < n; ++i)
        if (free[i]) d[i] -= alpha[j] * y_[j][i];
    }
    if (k > 0) {
      const double gamma = 1.0 / (rho_.back() * dot_free(y_.back(), y_.back()));
      if (std::isfinite(gamma) && gamma > 0.0)
        for (double& x : d) x *= gamma;
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double beta = rho_[j] * dot_free(y_[j], d);
      for (std::size_t i = 0; i < n; ++i)
        if (free[i]) d[i] += (alpha[j] - beta) * s_[j][i];
    }
  }

private:
  std::size_t capacity_;
  std::deque<std::vector<double>> s_, y_;
  std::deque<double> rho_;
};

/// Projected L-BFGS on the unit box minimizing the augmented Lagrangian.
/// Coordinates at a bound whose gradient pushes outward are held fixed
/// (two-metric projection); the rest follow the quasi-Newton direction,
/// with an Armijo search along the projection arc. `y` is updated in place.
InnerResult minimize_augmented(ScaledProblem& sp, std::vector<double>& y, double lambda,
                               double rho, double tolerance, int max_iter) {
  constexpr double kArmijo = 1e-4;
  const std::size_t n = y.size();
  std::vector<double> g(n), g_new(n), trial(n), dir(n);
  std::vector<char> free(n);
  LbfgsMemory memory(8);

  ScaledProblem::Point point = sp.values(y);
  sp.gradient(y, lambda + rho * point.residual, g);
  double value = augmented(point, lambda, rho);
  double pg = projected_gradient_norm(y, g);

  InnerResult result;
  int it = 0;
  bool fresh = true; // no curvature information yet
  for (; it < max_iter && pg > tolerance; ++it) {
    const double eps = std::min(1e-3, pg);
    for (std::size_t i = 0; i < n; ++i)
      free[i] = !((y[i] <= eps && g[i] > 0.0) || (y[i] >= 1.0 - eps && g[i] < 0.0));
    memory.direction(g, free, dir);
    if (fresh) {
      // first step: unit-length steepest descent on the free coordinates
      const double norm = std::sqrt(std::inner_product(dir.begin(), dir.end(), dir.begin(), 0.0));
      if (norm > 0.0)
        for (double& d : dir) d /= norm;
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!free[i]) dir[i] = -g[i];

    double step = 1.0;
    ScaledProblem::Point trial_point;
    double trial_value = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      double decrease = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = std::clamp(y[i] + step * dir[i], 0.0, 1.0);
        decrease += g[i] * (trial[i] - y[i]);
      }
      if (decrease >= 0.0) break;
      trial_point = sp.values(trial);
      trial_value = augmented(trial_point, lambda, rho);
      if (std::isfinite(trial_value) && trial_value <= value + kArmijo * decrease) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (fresh) break;
      memory.clear();
      fresh = true;
      continue;
    }

    sp.gradient(trial, lambda + rho * trial_point.residual, g_new);
    std::vector<double> s(n), dy(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = trial[i] - y[i];
      dy[i] = g_new[i] - g[i];
    }
    memory.push(std::move(s), std::move(dy));
    fresh = false;
    y.swap(trial);
    g.swap(g_new);
    point = trial_point;
    value = trial_value;
    pg = projected_gradient_norm(y, g);
  }
  result.point = point;
  result.pg_norm = pg;
  result.iterations = it;
  return result;
}

/// Newton steps on the scaled budget residual along its gradient restricted
/// to coordinates free to move; keeps the point on the constraint surface.
ScaledProblem::Point restore_feasibility(ScaledProblem& sp, std::vector<double>& y,
                                         double tolerance) {
  const std::size_t n = y.size();
  std::vector<double> g(n), trial(n);
  ScaledProblem::Point point = sp.values(y);
  for (int it = 0; it < 30 && std::abs(point.residual) > tolerance; ++it) {
    sp.residual_gradient(y, g);
    const double direction = point.residual > 0.0 ? -1.0 : 1.0;
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool blocked = (direction * g[i] < 0.0 && y[i] <= 0.0) ||
                           (direction * g[i] > 0.0 && y[i] >= 1.0);
      if (blocked) g[i] = 0.0;
      norm2 += g[i] * g[i];
    }
    if (norm2 == 0.0) break;
    double step = -point.residual / norm2;
    bool improved = false;
    for (int ls = 0; ls < 30; ++ls) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = std::clamp(y[i] + step * g[i], 0.0, 1.0);
      const auto trial_point = sp.values(trial);
      if (std::abs(trial_point.residual) < std::abs(point.residual)) {
        y = trial;
        point = trial_point;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return point;
}

std::vector<double> random_start(const NlpProblem& problem, std::uint64_t seed, int index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index), std::uint64_t{0x5eed}};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(problem.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = unit(rng) * problem.upper()[i];
  ControlSchedule shape = problem.decode(x);
  // push toward full intensity until the shape can afford the budget
  for (int attempt = 0; attempt < 60; ++attempt) {
    try {
      const ControlSchedule scaled = rescale_to_budget(shape, problem.params(), problem.network());
      return {scaled.decision_vector().begin(), scaled.decision_vector().end()};
    } catch (const InfeasibleBudget&) {
      auto values = shape.decision_vector();
      for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = 0.5 * (values[i] + problem.upper()[i]);
    }
  }
  throw InfeasibleBudget(problem.params().budget, 0.0);
}

} // namespace

OptimalSolution solve_from(const NlpProblem& problem, std::span<const double> x0,
                           const SolverOptions& opts) {
  ScaledProblem sp(problem);
  std::vector<double> y = sp.to_scaled(x0);
  const double tol_kkt = opts.tol_grad * std::sqrt(double(problem.size()));

  std::vector<double> g(problem.size());
  ScaledProblem::Point point = sp.values(y);

  // least-squares multiplier estimate at the start
  double lambda = 0.0;
  {
    std::vector<double> g_obj(problem.size()), g_con(problem.size());
    sp.gradient(y, 0.0, g_obj); // -grad J
    sp.residual_gradient(y, g_con);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g_con.size(); ++i) {
      num += g_obj[i] * g_con[i];
      den += g_con[i] * g_con[i];
    }
    if (den > 0.0) lambda = -num / den;
  }
  double rho = 10.0;
  double inner_tol = std::max(tol_kkt, 1e-3);
  double previous_residual = std::abs(point.residual);

  OptimalSolution sol{problem.decode(x0)};
  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    const InnerResult inner = minimize_augmented(sp, y, lambda, rho, inner_tol, opts.max_inner);
    sol.iterations += inner.iterations;
    sol.outer_iterations = outer;
    point = inner.point;
    lambda += rho * point.residual;

    sp.gradient(y, lambda, g);
    sol.kkt_residual = projected_gradient_norm(y, g);
    const double residual = std::abs(point.residual);
    if (residual <= opts.tol_con && sol.kkt_residual <= tol_kkt) {
      sol.converged = true;
      break;
    }
    if (residual > 0.25 * previous_residual) rho = std::min(rho * 10.0, 1e8);
    previous_residual = residual;
    inner_tol = std::max(tol_kkt, 0.1 * inner_tol);
  }

  if (std::abs(point.residual) > opts.tol_con * 1e-2) {
    point = restore_feasibility(sp, y, opts.tol_con * 1e-2);
    sp.gradient(y, lambda, g);
    sol.kkt_residual = projected_gradient_norm(y, g);
    sol.converged = std::abs(point.residual) <= opts.tol_con && sol.kkt_residual <= tol_kkt;
  }

  const auto x = sp.to_unscaled(y);
  sol.schedule = problem.decode(x);
  sol.objective = point.objective;
  sol.spend = point.residual * sp.budget_scale() + problem.params().budget;
  sol.multiplier = lambda / sp.budget_scale();
  return sol;
}

OptimalSolution solve(const NlpProblem& problem, const SolverOptions& opts) {
  const ModelParams& params = problem.params();
  const Network& net = problem.network();
  const TimeGrid& grid = problem.grid();

  if (params.budget == 0.0) {
    const ControlSchedule zero = no_control(net.groups(), grid);
    const auto values = problem.evaluate(zero.decision_vector());
    return {zero, values.objective, 0.0, 0.0, 0, 0, 0.0, true, 0};
  }
  const double full = full_intensity_spend(params, net, grid);
  if (params.budget > full * (1.0 + 1e-12)) throw InfeasibleBudget(params.budget, full);
  if (std::abs(params.budget - full) <= opts.tol_con * params.budget) {
    const auto all = ControlSchedule::constant(grid, net.groups(), params.u_max, params.v_max);
    const auto values = problem.evaluate(all.decision_vector());
    return {all, values.objective, values.constraint + params.budget, 0.0, 0, 0, 0.0, true, 0};
  }

  const int starts = std::max(1, opts.n_starts);
  const auto count = static_cast<std::size_t>(starts);
  std::vector<OptimalSolution> results;
  results.reserve(count);
  for (std::size_t s = 0; s < count; ++s) results.push_back({no_control(net.groups(), grid)});

  parallel_for(count, opts.workers, [&](std::size_t s) {
    std::vector<double> x0;
    if (s == 0) {
      const auto st = static_strategy(params, net, grid);
      x0.assign(st.schedule.decision_vector().begin(), st.schedule.decision_vector().end());
    } else if (s == 1) {
      const auto bb = bang_bang_strategy(params, net, grid);
      x0.assign(bb.schedule.decision_vector().begin(), bb.schedule.decision_vector().end());
    } else {
      x0 = random_start(problem, opts.seed, static_cast<int>(s));
    }
    results[s] = solve_from(problem, x0, opts);
    results[s].start_index = static_cast<int>(s);
  });

  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    const auto& cand = results[s];
    const auto& inc = results[best];
    // infeasible candidates never beat a feasible incumbent
    const bool cand_ok = cand.relative_residual(params.budget) <= 1e-6;
    const bool inc_ok = inc.relative_residual(params.budget) <= 1e-6;
    if (cand_ok != inc_ok) {
      if (cand_ok) best = s;
      continue;
    }
    if (cand.objective > inc.objective + 1e-10 ||
        (std::abs(cand.objective - inc.objective) <= 1e-10 && cand.kkt_residual < inc.kkt_residual))
      best = s;
  }
  return results[best];
}

double ResourceAllocation::total() const {
  return std::accumulate(direct_total.begin(), direct_total.end(), 0.0) +
         std::accumulate(wom_total.begin(), wom_total.end(), 0.0);
}

double ResourceAllocation::wom_share() const {
  return std::accumulate(wom_total.begin(), wom_total.end(), 0.0) / total();
}

ResourceAllocation resource_allocation_rates(const ControlSchedule& schedule,
                                             const Trajectory& traj, const ModelParams& params,
                                             const Network& net) {
  ResourceAllocation out;
  out.rates = resource_rates(traj, schedule, params, net);
  const double dt = schedule.grid().dt();
  out.direct_total.assign(out.rates.groups, 0.0);
  out.wom_total.assign(out.rates.groups, 0.0);
  for (std::size_t m = 0; m < out.rates.groups; ++m) {
    for (std::size_t n = 1; n < out.rates.points; ++n) {
      out.direct_total[m] += out.rates.direct_at(m, n) * dt;
      out.wom_total[m] += out.rates.wom_at(m, n) * dt;
    }
  }
  return out;
}

} // namespace campaign
