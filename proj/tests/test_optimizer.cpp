#include "doctest.h"
#include "fixtures.hpp"

#include "campaign/optimizer.hpp"
#include "campaign/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace campaign;

namespace {

std::vector<double> random_point(const NlpProblem& prob, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.05, 0.95);
  std::vector<double> x(prob.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = unit(rng) * prob.upper()[i];
  return x;
}

/// Max over coordinates of |adjoint - central difference| relative to the
/// gradient's largest entry.
double fd_error(const NlpProblem& prob, std::vector<double> x, const std::vector<double>& grad,
                bool constraint) {
  const double h = 1e-6;
  double scale = 0.0, err = 0.0;
  for (double g : grad) scale = std::max(scale, std::abs(g));
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double x0 = x[i];
    x[i] = x0 + h;
    const auto plus = prob.evaluate(x);
    x[i] = x0 - h;
    const auto minus = prob.evaluate(x);
    x[i] = x0;
    const double fd = constraint ? (plus.constraint - minus.constraint) / (2 * h)
                                 : (plus.objective - minus.objective) / (2 * h);
    err = std::max(err, std::abs(fd - grad[i]));
  }
  return err / scale;
}

} // namespace

TEST_CASE("transcription") {
  const auto net = fixtures::network("ER", 3);
  auto p = ModelParams::defaults(3);
  const auto prob = transcribe(p, net, fixtures::default_grid());
  CHECK(prob.size() == 306);
  CHECK(prob.upper()[0] == p.u_max);
  CHECK(prob.upper()[305] == p.v_max);
  CHECK(prob.lower()[100] == 0.0);

  const std::vector<double> zero(306, 0.0);
  const auto v = prob.evaluate(zero);
  CHECK(v.objective == doctest::Approx(objective(integrate_heun(p, no_control(3, fixtures::default_grid()), net), net.dist)));
  CHECK(v.constraint == doctest::Approx(-p.budget));

  p.v_max = 0.0;
  const auto no_wom = transcribe(p, net, fixtures::default_grid());
  std::vector<double> full(no_wom.upper().begin(), no_wom.upper().end());
  CHECK(no_wom.constraint(full) == doctest::Approx(p.u_max * p.u_max - p.budget).epsilon(1e-12));

  // decode round trip
  std::vector<double> x(306);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = 1e-4 * static_cast<double>(i);
  const auto s = prob.decode(x);
  CHECK(s.u(1, 7) == x[51 + 7]);
  CHECK(s.v(2, 50) == x[305]);
  CHECK_THROWS_AS(prob.decode(std::vector<double>(10)), std::invalid_argument);
}

TEST_CASE("adjoint gradients match central differences") {
  std::mt19937_64 rng(2024);
  for (const char* name : {"ER", "PL3"}) {
    const auto net = fixtures::network(name, 3);
    const auto prob = transcribe(ModelParams::defaults(3), net, TimeGrid(1.0, 20));
    for (int trial = 0; trial < 2; ++trial) {
      const auto x = random_point(prob, rng);
      const auto g = gradient(prob, x);
      CHECK(fd_error(prob, x, g.objective, false) <= 1e-4);
      CHECK(fd_error(prob, x, g.constraint, true) <= 1e-4);
    }
  }
}

TEST_CASE("weighted gradient is the weighted sum") {
  std::mt19937_64 rng(5);
  const auto net = fixtures::network("PL2", 2);
  const auto prob = transcribe(ModelParams::defaults(2), net, fixtures::default_grid());
  const auto x = random_point(prob, rng);
  const auto g = gradient(prob, x);
  std::vector<double> combined(prob.size());
  prob.weighted_gradient(x, -1.5, 7.0, combined);
  for (std::size_t i = 0; i < combined.size(); ++i)
    CHECK(combined[i] == doctest::Approx(-1.5 * g.objective[i] + 7.0 * g.constraint[i]).epsilon(1e-10).scale(1e-12));
}

TEST_CASE("structural zeros of the gradient") {
  std::mt19937_64 rng(9);
  const auto net = fixtures::network("PL3", 3);
  auto p = ModelParams::defaults(3);
  const auto grid = fixtures::default_grid();
  {
    // without word of mouth the spend has no state dependence, so u(t_0),
    // which the right-endpoint sum skips, cannot move it
    const auto prob = transcribe(p, net, grid);
    auto x = random_point(prob, rng);
    std::fill(x.begin() + 3 * 51, x.end(), 0.0);
    const auto g = gradient(prob, x);
    for (std::size_t m = 0; m < 3; ++m) CHECK(g.constraint[m * 51] == 0.0);
  }
  p.profile.beta = 0.0;
  const auto prob = transcribe(p, net, grid);
  const auto g = gradient(prob, random_point(prob, rng));
  for (std::size_t i = 3 * 51; i < prob.size(); ++i) CHECK(g.objective[i] == 0.0);
}

TEST_CASE("solver edge cases") {
  const auto net = fixtures::network("ER", 3);
  auto p = ModelParams::defaults(3);
  const auto grid = fixtures::default_grid();

  p.budget = 0.0;
  const auto zero = solve(transcribe(p, net, grid));
  CHECK(zero.converged);
  for (double x : zero.schedule.decision_vector()) CHECK(x == 0.0);
  CHECK(zero.objective == doctest::Approx(objective(integrate_heun(p, no_control(3, grid), net), net.dist)));

  p.budget = 1.0;
  CHECK_THROWS_AS(solve(transcribe(p, net, grid)), InfeasibleBudget);

  p.budget = full_intensity_spend(p, net, grid);
  const auto full = solve(transcribe(p, net, grid));
  CHECK(full.schedule.u(1, 30) == p.u_max);
  CHECK(full.schedule.v(2, 1) == p.v_max);
}

TEST_CASE("optimal schedule on the default scenario") {
  const auto net = fixtures::network("PL2", 3);
  const auto p = ModelParams::defaults(3);
  const auto grid = fixtures::default_grid();
  const auto prob = transcribe(p, net, grid);
  const auto sol = solve(prob);

  CHECK(sol.converged);
  CHECK(sol.relative_residual(p.budget) <= 1e-6);
  CHECK(sol.schedule.within_bounds(p.u_max, p.v_max));
  const auto traj = integrate_heun(p, sol.schedule, net);
  CHECK(sol.objective == doctest::Approx(objective(traj, net.dist)).epsilon(1e-12));

  const double j_static = objective(integrate_heun(p, static_strategy(p, net, grid).schedule, net), net.dist);
  const double j_bang = objective(integrate_heun(p, bang_bang_strategy(p, net, grid).schedule, net), net.dist);
  CHECK(sol.objective >= std::max(j_static, j_bang) - 1e-4);
  CHECK(sol.multiplier > 0.0);

  // the multiplier predicts the value of a small budget increase
  auto richer = p;
  richer.budget *= 1.01;
  const auto sol2 = solve(transcribe(richer, net, grid));
  const double predicted = sol.multiplier * (richer.budget - p.budget);
  CHECK((sol2.objective - sol.objective) == doctest::Approx(predicted).epsilon(0.05));

  SUBCASE("resource allocation") {
    const auto alloc = resource_allocation_rates(sol.schedule, traj, p, net);
    CHECK(alloc.total() == doctest::Approx(p.budget).epsilon(1e-6));
    double shares = 0.0;
    for (std::size_t m = 0; m < 3; ++m) shares += alloc.group_share(m);
    CHECK(shares == doctest::Approx(1.0));
    CHECK(alloc.wom_total[2] > alloc.wom_total[1]);
    CHECK(alloc.wom_total[1] > alloc.wom_total[0]);
  }
}

TEST_CASE("solve is deterministic") {
  const auto net = fixtures::network("ER", 2);
  const auto prob = transcribe(ModelParams::defaults(2), net, fixtures::default_grid());
  SolverOptions one_worker;
  one_worker.workers = 1;
  SolverOptions many;
  many.workers = 3;
  const auto a = solve(prob, one_worker);
  const auto b = solve(prob, many);
  CHECK(a.objective == b.objective);
  CHECK(std::equal(a.schedule.decision_vector().begin(), a.schedule.decision_vector().end(),
                   b.schedule.decision_vector().begin()));
}
