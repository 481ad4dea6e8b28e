#include "campaign/dynamics.hpp"

#include "campaign/csv.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace campaign {

ProfileKind parse_profile_kind(const std::string& name) {
  if (name == "constant") return ProfileKind::constant;
  if (name == "decreasing" || name == "linear_decreasing") return ProfileKind::linear_decreasing;
  if (name == "increasing" || name == "linear_increasing") return ProfileKind::linear_increasing;
  throw std::invalid_argument("unknown spreading profile '" + name + "'");
}

std::string to_string(ProfileKind kind) {
  switch (kind) {
  case ProfileKind::constant: return "constant";
  case ProfileKind::linear_decreasing: return "decreasing";
  case ProfileKind::linear_increasing: return "increasing";
  }
  return "constant";
}

double SpreadingProfile::at(double t, double horizon) const {
  switch (kind) {
  case ProfileKind::constant: return beta;
  case ProfileKind::linear_decreasing: return beta_max * (1.0 - t / horizon);
  case ProfileKind::linear_increasing: return beta_max * t / horizon;
  }
  return beta;
}

void ModelParams::validate(std::size_t groups) const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (!(profile.beta >= 0.0) || !(profile.beta_max >= 0.0)) fail("beta must be non-negative");
  if (!(alpha > 0.0 && alpha <= 1.0)) fail("alpha must lie in (0, 1]");
  if (!(i0 >= 0.0 && i0 < 1.0)) fail("i0 must lie in [0, 1)");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) fail("horizon T must be positive");
  if (!(u_max >= 0.0)) fail("u_max must be non-negative");
  if (!(v_max >= 0.0)) fail("v_max must be non-negative");
  if (alpha * (1.0 + v_max) > 1.0 + 1e-12) fail("alpha * (1 + v_max) must not exceed 1");
  if (b_hat.size() != groups || c_hat.size() != groups)
    fail("b_hat and c_hat need one weight per group (" + std::to_string(groups) + ")");
  for (double w : b_hat)
    if (!(w >= 0.0)) fail("b_hat weights must be non-negative");
  for (double w : c_hat)
    if (!(w >= 0.0)) fail("c_hat weights must be non-negative");
  if (!(d >= 0.0)) fail("d must be non-negative");
  if (!(budget >= 0.0) || !std::isfinite(budget)) fail("budget must be non-negative");
}

ModelParams ModelParams::defaults(std::size_t groups) {
  ModelParams p;
  p.b_hat.assign(groups, 1.0);
  p.c_hat.assign(groups, 1.0);
  p.budget = p.u_max * p.u_max * p.horizon / 8.0;
  return p;
}

TimeGrid::TimeGrid(double horizon, int intervals) : horizon_(horizon), intervals_(intervals) {
  if (!(horizon > 0.0)) throw std::invalid_argument("time grid horizon must be positive");
  if (intervals < 1) throw std::invalid_argument("time grid needs at least one interval");
}

double TimeGrid::time(std::size_t n) const {
  // exact endpoint avoids n * dt rounding past T
  if (n == points() - 1) return horizon_;
  return static_cast<double>(n) * dt();
}

ControlSchedule::ControlSchedule(TimeGrid grid, std::size_t groups)
    : grid_(grid), groups_(groups), values_(2 * groups * grid.points(), 0.0) {
  if (groups == 0) throw std::invalid_argument("schedule needs at least one group");
}

ControlSchedule::ControlSchedule(TimeGrid grid, std::size_t groups,
                                 std::span<const double> decision)
    : ControlSchedule(grid, groups) {
  if (decision.size() != values_.size())
    throw std::invalid_argument("decision vector has " + std::to_string(decision.size()) +
                                " entries, expected " + std::to_string(values_.size()));
  std::copy(decision.begin(), decision.end(), values_.begin());
}

void ControlSchedule::controls_at(std::size_t n, std::span<double> u_out,
                                  std::span<double> v_out) const {
  for (std::size_t m = 0; m < groups_; ++m) {
    u_out[m] = u(m, n);
    v_out[m] = v(m, n);
  }
}

bool ControlSchedule::within_bounds(double u_max, double v_max) const {
  const std::size_t half = groups_ * grid_.points();
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double hi = i < half ? u_max : v_max;
    if (!(values_[i] >= 0.0 && values_[i] <= hi)) return false;
  }
  return true;
}

ControlSchedule ControlSchedule::constant(TimeGrid grid, std::size_t groups, double u_value,
                                          double v_value) {
  ControlSchedule s(grid, groups);
  const std::size_t half = groups * grid.points();
  std::fill(s.values_.begin(), s.values_.begin() + static_cast<std::ptrdiff_t>(half), u_value);
  std::fill(s.values_.begin() + static_cast<std::ptrdiff_t>(half), s.values_.end(), v_value);
  return s;
}

Network::Network(DegreeDistribution d, GroupPartition p)
    : dist(std::move(d)), neighbors(derive_neighbor_distributions(dist)), partition(std::move(p)) {
  if (partition.class_groups().size() != dist.size())
    throw std::invalid_argument("partition does not match the degree distribution");
}

Trajectory::Trajectory(TimeGrid grid, std::size_t classes, std::size_t groups)
    : grid_(grid), classes_(classes), groups_(groups), values_(grid.points() * classes, 0.0),
      total_(grid.points(), 0.0), group_link_(groups * grid.points(), 0.0),
      neighbor_susceptible_(grid.points(), 0.0) {}

void Trajectory::compute_aggregates(const Network& net) {
  const auto pmf = net.dist.pmf();
  const auto& r = net.neighbors.r;
  for (std::size_t n = 0; n < grid_.points(); ++n) {
    const auto s = state(n);
    double total = 0.0;
    double sbar = 0.0;
    for (std::size_t j = 0; j < classes_; ++j) {
      total += pmf[j] * s[j];
      sbar += r[j] * (1.0 - s[j]);
    }
    total_[n] = total;
    neighbor_susceptible_[n] = sbar;
    for (std::size_t m = 0; m < groups_; ++m) {
      double link = 0.0;
      for (std::size_t j = net.partition.first_index(m); j < net.partition.last_index(m); ++j)
        link += net.dist.degree(j) * s[j] * pmf[j];
      group_link_[m * grid_.points() + n] = link;
    }
  }
}

void Trajectory::record_clamp(double amount) { max_clamp_ = std::max(max_clamp_, amount); }

void rhs_into(std::span<const double> state, double beta, std::span<const double> u,
              std::span<const double> v, const ModelParams& params, const Network& net,
              std::span<double> out) {
  const auto& q = net.neighbors.q;
  const auto& part = net.partition;
  // sum_p (1 + v_p) sum_{l in K_p} q_l i_l, shared by every class
  double pressure = 0.0;
  for (std::size_t m = 0; m < part.groups(); ++m) {
    double inner = 0.0;
    for (std::size_t l = part.first_index(m); l < part.last_index(m); ++l) inner += q[l] * state[l];
    pressure += (1.0 + v[m]) * inner;
  }
  const double spread = beta * params.alpha * pressure;
  for (std::size_t m = 0; m < part.groups(); ++m) {
    for (std::size_t j = part.first_index(m); j < part.last_index(m); ++j) {
      const double susceptible = 1.0 - state[j];
      out[j] = spread * net.dist.degree(j) * susceptible + u[m] * susceptible;
    }
  }
}

std::vector<double> rhs(std::span<const double> state, double t, std::span<const double> u,
                        std::span<const double> v, const ModelParams& params,
                        const Network& net) {
  if (state.size() != net.classes()) throw std::invalid_argument("state size mismatch");
  if (u.size() != net.groups() || v.size() != net.groups())
    throw std::invalid_argument("control size mismatch");
  std::vector<double> out(state.size());
  rhs_into(state, params.beta(t), u, v, params, net, out);
  return out;
}

Trajectory integrate_heun(const ModelParams& params, const ControlSchedule& schedule,
                          const Network& net) {
  const TimeGrid& grid = schedule.grid();
  const std::size_t classes = net.classes();
  const std::size_t groups = net.groups();
  if (schedule.groups() != groups)
    throw std::invalid_argument("schedule has " + std::to_string(schedule.groups()) +
                                " groups, network partition has " + std::to_string(groups));

  Trajectory traj(grid, classes, groups);
  std::fill(traj.state(0).begin(), traj.state(0).end(), params.i0);

  std::vector<double> u_prev(groups), v_prev(groups), u_next(groups), v_next(groups);
  std::vector<double> left(classes), right(classes), predicted(classes);
  const double dt = grid.dt();

  for (std::size_t n = 1; n < grid.points(); ++n) {
    const auto prev = traj.state(n - 1);
    auto next = traj.state(n);
    schedule.controls_at(n - 1, u_prev, v_prev);
    schedule.controls_at(n, u_next, v_next);

    rhs_into(prev, params.beta(grid.time(n - 1)), u_prev, v_prev, params, net, left);
    for (std::size_t j = 0; j < classes; ++j) predicted[j] = prev[j] + dt * left[j];
    rhs_into(predicted, params.beta(grid.time(n)), u_next, v_next, params, net, right);

    double clamp = 0.0;
    for (std::size_t j = 0; j < classes; ++j) {
      const double raw = prev[j] + 0.5 * dt * (left[j] + right[j]);
      if (!std::isfinite(raw))
        throw NumericalError("non-finite state at step " + std::to_string(n), n);
      const double bounded = std::clamp(raw, 0.0, 1.0);
      clamp = std::max(clamp, std::abs(raw - bounded));
      next[j] = bounded;
    }
    traj.record_clamp(clamp);
  }
  traj.compute_aggregates(net);
  return traj;
}

double objective(const Trajectory& traj, const DegreeDistribution& dist) {
  const auto last = traj.state(traj.grid().points() - 1);
  const auto pmf = dist.pmf();
  double j_value = 0.0;
  for (std::size_t j = 0; j < last.size(); ++j) j_value += pmf[j] * last[j];
  return j_value;
}

ResourceRates resource_rates(const Trajectory& traj, const ControlSchedule& schedule,
                             const ModelParams& params, const Network& net) {
  const TimeGrid& grid = schedule.grid();
  ResourceRates rates;
  rates.groups = net.groups();
  rates.points = grid.points();
  rates.direct.assign(rates.groups * rates.points, 0.0);
  rates.wom.assign(rates.groups * rates.points, 0.0);
  const auto masses = net.partition.masses();
  for (std::size_t m = 0; m < rates.groups; ++m) {
    for (std::size_t n = 0; n < rates.points; ++n) {
      const double u = schedule.u(m, n);
      const double v = schedule.v(m, n);
      rates.direct[m * rates.points + n] = masses[m] * params.b_hat[m] * u * u;
      rates.wom[m * rates.points + n] = params.alpha * v * params.beta(grid.time(n)) * params.d *
                                        params.c_hat[m] * v * v *
                                        traj.group_link_infected(m, n) *
                                        traj.neighbor_susceptible(n);
    }
  }
  return rates;
}

double budget_spend(const Trajectory& traj, const ControlSchedule& schedule,
                    const ModelParams& params, const Network& net) {
  const ResourceRates rates = resource_rates(traj, schedule, params, net);
  double spend = 0.0;
  for (std::size_t n = 1; n < rates.points; ++n)
    for (std::size_t m = 0; m < rates.groups; ++m)
      spend += rates.direct_at(m, n) + rates.wom_at(m, n);
  return spend * schedule.grid().dt();
}

double full_intensity_spend(const ModelParams& params, const Network& net, const TimeGrid& grid) {
  const auto full = ControlSchedule::constant(grid, net.groups(), params.u_max, params.v_max);
  return budget_spend(integrate_heun(params, full, net), full, params, net);
}

double lipschitz_bound(const ModelParams& params, const Network& net) {
  const double k_max = net.dist.k_max();
  return params.u_max +
         3.0 * params.profile.peak() * k_max * k_max * params.alpha * (1.0 + params.v_max);
}

void write_trajectory_csv(const Trajectory& traj, const Network& net,
                          std::span<const int> selected_degrees,
                          const std::filesystem::path& path) {
  std::vector<std::string> header{"t", "i_total"};
  std::vector<std::size_t> selected;
  for (int k : selected_degrees) {
    if (k < net.dist.k_min() || k > net.dist.k_max())
      throw std::invalid_argument("selected degree " + std::to_string(k) + " outside range");
    header.push_back("i_k" + std::to_string(k));
    selected.push_back(static_cast<std::size_t>(k - net.dist.k_min()));
  }
  for (std::size_t m = 0; m < traj.groups(); ++m)
    header.push_back("ibar_" + std::to_string(m + 1));
  header.push_back("sbar");

  CsvTable table(std::move(header));
  for (std::size_t n = 0; n < traj.grid().points(); ++n) {
    std::vector<double> row{traj.grid().time(n), traj.total(n)};
    for (std::size_t j : selected) row.push_back(traj.at(n, j));
    for (std::size_t m = 0; m < traj.groups(); ++m) row.push_back(traj.group_link_infected(m, n));
    row.push_back(traj.neighbor_susceptible(n));
    table.add_row(std::move(row));
  }
  write_file_atomic(path, table.str());
}

void write_schedule_csv(const ControlSchedule& schedule, const std::filesystem::path& path) {
  std::vector<std::string> header{"t"};
  for (std::size_t m = 0; m < schedule.groups(); ++m) header.push_back("u_" + std::to_string(m + 1));
  for (std::size_t m = 0; m < schedule.groups(); ++m) header.push_back("v_" + std::to_string(m + 1));
  CsvTable table(std::move(header));
  for (std::size_t n = 0; n < schedule.grid().points(); ++n) {
    std::vector<double> row{schedule.grid().time(n)};
    for (std::size_t m = 0; m < schedule.groups(); ++m) row.push_back(schedule.u(m, n));
    for (std::size_t m = 0; m < schedule.groups(); ++m) row.push_back(schedule.v(m, n));
    table.add_row(std::move(row));
  }
  write_file_atomic(path, table.str());
}

} // namespace campaign
