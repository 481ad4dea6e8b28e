#pragma once

#include "campaign/dynamics.hpp"

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

namespace campaign {

/// Configuration-model multigraph in compressed adjacency form. Self-loops
/// and parallel edges are kept; a self-loop appears twice in its node's list.
class Graph {
public:
  Graph(std::vector<int> sampled_degrees, int k_min,
        const std::vector<std::pair<int, int>>& edges);

  std::size_t nodes() const { return sampled_degree_.size(); }
  std::size_t edges() const { return edge_list_.size(); }

  std::span<const int> neighbors(std::size_t node) const {
    return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  /// Degree drawn from the distribution (the realized degree may be one
  /// less for the node that held the discarded half-edge).
  int sampled_degree(std::size_t node) const { return sampled_degree_[node]; }
  std::size_t degree(std::size_t node) const { return offsets_[node + 1] - offsets_[node]; }
  /// Index of the sampled degree within the distribution's range.
  std::size_t class_index(std::size_t node) const {
    return static_cast<std::size_t>(sampled_degree_[node] - k_min_);
  }

  void write_edge_list(const std::filesystem::path& path) const;

private:
  int k_min_;
  std::vector<int> sampled_degree_;
  std::vector<std::size_t> offsets_;
  std::vector<int> adjacency_;
  std::vector<std::pair<int, int>> edge_list_;
};

/// Degrees i.i.d. from `dist`, half-edges paired uniformly at random; an
/// unpaired final half-edge is dropped.
Graph sample_configuration_model(const DegreeDistribution& dist, std::size_t n_nodes,
                                 std::uint64_t seed);

struct SimulationResult {
  std::vector<double> times;          // control grid points
  std::vector<double> infected;       // i(t_n)
  std::vector<double> class_infected; // i_k(t_n), time-major over degree classes
  std::size_t classes = 0;
  std::size_t steps_per_interval = 0;

  double class_at(std::size_t n, std::size_t j) const { return class_infected[n * classes + j]; }
};

/// Discrete-time SI sweep on `graph`. Each control interval is split into
/// ceil(grid dt / dt) equal steps; controls are held at their left grid value.
SimulationResult simulate_si(const Graph& graph, const ModelParams& params,
                             const ControlSchedule& schedule, const Network& net, double dt,
                             std::uint64_t seed);

/// Simulation steps per control interval when no step is given. One step per
/// interval lags the mean field visibly on heavy-tailed networks.
inline constexpr int kDefaultSubsteps = 10;

struct EnsembleSpec {
  std::size_t n_nodes = 10000;
  int n_runs = 20;
  double dt = 0.0; // 0: the control grid spacing / kDefaultSubsteps
  std::uint64_t seed = 1;
  int workers = 0;
};

struct EnsembleResult {
  std::vector<double> times;
  std::vector<double> mean;
  std::vector<double> stddev; // population standard deviation across runs
  int runs = 0;
};

/// Fresh graph and fresh infection stream per run, aggregated pointwise.
EnsembleResult ensemble(const Network& net, const ModelParams& params,
                        const ControlSchedule& schedule, const EnsembleSpec& spec);

} // namespace campaign
