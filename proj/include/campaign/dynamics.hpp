#pragma once

#include "campaign/degree_model.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace campaign {

enum class ProfileKind { constant, linear_decreasing, linear_increasing };

ProfileKind parse_profile_kind(const std::string& name);
std::string to_string(ProfileKind kind);

/// Spreading rate beta(t) on [0, T].
struct SpreadingProfile {
  ProfileKind kind = ProfileKind::constant;
  double beta = 0.12;     // constant profile
  double beta_max = 0.24; // peak of the linear profiles

  double at(double t, double horizon) const;
  double peak() const { return kind == ProfileKind::constant ? beta : beta_max; }

  static SpreadingProfile constant(double beta) { return {ProfileKind::constant, beta, 0.24}; }
  static SpreadingProfile decreasing(double beta_max) {
    return {ProfileKind::linear_decreasing, 0.12, beta_max};
  }
  static SpreadingProfile increasing(double beta_max) {
    return {ProfileKind::linear_increasing, 0.12, beta_max};
  }
};

struct ModelParams {
  SpreadingProfile profile;
  double alpha = 0.5;
  double i0 = 0.01;
  double horizon = 1.0;
  double u_max = 0.12;
  double v_max = 0.5;
  std::vector<double> b_hat; // direct-cost weight per group
  std::vector<double> c_hat; // word-of-mouth cost weight per group
  double d = 0.5;            // relative word-of-mouth cost
  double budget = 0.0;       // per-node budget B

  double beta(double t) const { return profile.at(t, horizon); }

  /// Throws std::invalid_argument naming the offending field.
  void validate(std::size_t groups) const;

  /// Defaults for M groups: unit cost weights and B = u_max^2 T / 8.
  static ModelParams defaults(std::size_t groups);
};

/// Uniform grid t_n = n * T / N, n = 0..N.
class TimeGrid {
public:
  TimeGrid(double horizon, int intervals);

  double horizon() const { return horizon_; }
  int intervals() const { return intervals_; }
  std::size_t points() const { return static_cast<std::size_t>(intervals_) + 1; }
  double dt() const { return horizon_ / intervals_; }
  double time(std::size_t n) const;

private:
  double horizon_;
  int intervals_;
};

/// Sampled controls u_m(t_n), v_m(t_n), stored group-major so that
/// `decision_vector()` is the concatenation (u_1, ..., u_M, v_1, ..., v_M).
class ControlSchedule {
public:
  ControlSchedule(TimeGrid grid, std::size_t groups);
  ControlSchedule(TimeGrid grid, std::size_t groups, std::span<const double> decision);

  const TimeGrid& grid() const { return grid_; }
  std::size_t groups() const { return groups_; }

  double& u(std::size_t m, std::size_t n) { return values_[m * grid_.points() + n]; }
  double& v(std::size_t m, std::size_t n) { return values_[(groups_ + m) * grid_.points() + n]; }
  double u(std::size_t m, std::size_t n) const { return values_[m * grid_.points() + n]; }
  double v(std::size_t m, std::size_t n) const { return values_[(groups_ + m) * grid_.points() + n]; }

  /// Per-group control values at grid point n.
  void controls_at(std::size_t n, std::span<double> u_out, std::span<double> v_out) const;

  std::span<const double> decision_vector() const { return values_; }
  std::span<double> decision_vector() { return values_; }

  bool within_bounds(double u_max, double v_max) const;

  static ControlSchedule constant(TimeGrid grid, std::size_t groups, double u, double v);

private:
  TimeGrid grid_;
  std::size_t groups_;
  std::vector<double> values_;
};

/// Everything derived from a degree distribution that the dynamics need.
struct Network {
  DegreeDistribution dist;
  NeighborDistributions neighbors;
  GroupPartition partition;

  Network(DegreeDistribution d, GroupPartition p);
  std::size_t classes() const { return dist.size(); }
  std::size_t groups() const { return partition.groups(); }
};

/// State i_k(t_n), time-major, plus the grid-point aggregates used by the
/// objective and the budget.
class Trajectory {
public:
  Trajectory(TimeGrid grid, std::size_t classes, std::size_t groups);

  const TimeGrid& grid() const { return grid_; }
  std::size_t classes() const { return classes_; }
  std::size_t groups() const { return groups_; }

  std::span<const double> state(std::size_t n) const {
    return {values_.data() + n * classes_, classes_};
  }
  std::span<double> state(std::size_t n) { return {values_.data() + n * classes_, classes_}; }
  double at(std::size_t n, std::size_t j) const { return values_[n * classes_ + j]; }

  /// i(t_n) = sum_k p_k i_k(t_n)
  double total(std::size_t n) const { return total_[n]; }
  /// ibar_m(t_n) = sum_{k in K_m} k i_k(t_n) p_k
  double group_link_infected(std::size_t m, std::size_t n) const {
    return group_link_[m * grid_.points() + n];
  }
  /// sbar(t_n) = sum_k r_k (1 - i_k(t_n))
  double neighbor_susceptible(std::size_t n) const { return neighbor_susceptible_[n]; }

  /// Largest correction applied by clamping the state into [0, 1].
  double max_clamp() const { return max_clamp_; }

  void compute_aggregates(const Network& net);
  void record_clamp(double amount);

private:
  TimeGrid grid_;
  std::size_t classes_;
  std::size_t groups_;
  std::vector<double> values_;
  std::vector<double> total_;
  std::vector<double> group_link_;
  std::vector<double> neighbor_susceptible_;
  double max_clamp_ = 0.0;
};

class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, std::size_t step)
      : std::runtime_error(what), step_(step) {}
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

/// di/dt of the controlled mean-field system at a single time.
/// `u` and `v` hold one value per group.
std::vector<double> rhs(std::span<const double> state, double t, std::span<const double> u,
                        std::span<const double> v, const ModelParams& params, const Network& net);

/// Allocation-free form of rhs(); `beta` is beta(t) already evaluated.
void rhs_into(std::span<const double> state, double beta, std::span<const double> u,
              std::span<const double> v, const ModelParams& params, const Network& net,
              std::span<double> out);

/// Heun predictor-corrector on the schedule's grid. Controls enter the
/// predictor at t_{n-1} and the corrector at t_n.
Trajectory integrate_heun(const ModelParams& params, const ControlSchedule& schedule,
                          const Network& net);

/// J = sum_k p_k i_k(T)
double objective(const Trajectory& traj, const DegreeDistribution& dist);

/// Instantaneous resource consumption per group at every grid point.
struct ResourceRates {
  std::size_t groups = 0;
  std::size_t points = 0;
  std::vector<double> direct; // g_m b_m(u_m(t_n)), group-major
  std::vector<double> wom;    // alpha v_m beta c_m(v_m) ibar_m sbar, group-major

  double direct_at(std::size_t m, std::size_t n) const { return direct[m * points + n]; }
  double wom_at(std::size_t m, std::size_t n) const { return wom[m * points + n]; }
};

ResourceRates resource_rates(const Trajectory& traj, const ControlSchedule& schedule,
                             const ModelParams& params, const Network& net);

/// Right-endpoint sum over n = 1..N of the resource rates times dt.
double budget_spend(const Trajectory& traj, const ControlSchedule& schedule,
                    const ModelParams& params, const Network& net);

/// Spend of the full-intensity constant schedule (u_max, v_max everywhere).
double full_intensity_spend(const ModelParams& params, const Network& net, const TimeGrid& grid);

/// Lipschitz constant of rhs in the 1-norm over admissible controls:
/// u_max + 3 beta_max K_max^2 alpha (1 + v_max).
double lipschitz_bound(const ModelParams& params, const Network& net);

void write_trajectory_csv(const Trajectory& traj, const Network& net,
                          std::span<const int> selected_degrees,
                          const std::filesystem::path& path);
void write_schedule_csv(const ControlSchedule& schedule, const std::filesystem::path& path);

} // namespace campaign
