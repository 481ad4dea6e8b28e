#include "campaign/netsim.hpp"

#include "campaign/csv.hpp"
#include "campaign/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace campaign {

namespace {

enum class Stream : std::uint64_t { graph = 1, infection = 2 };

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t run, Stream stream) {
  std::seed_seq seq{seed, run, static_cast<std::uint64_t>(stream)};
  return std::mt19937_64(seq);
}

} // namespace

Graph::Graph(std::vector<int> sampled_degrees, int k_min,
             const std::vector<std::pair<int, int>>& edges)
    : k_min_(k_min), sampled_degree_(std::move(sampled_degrees)),
      offsets_(sampled_degree_.size() + 1, 0), edge_list_(edges) {
  for (const auto& [a, b] : edges) {
    ++offsets_[static_cast<std::size_t>(a) + 1];
    ++offsets_[static_cast<std::size_t>(b) + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    adjacency_[fill[static_cast<std::size_t>(a)]++] = b;
    adjacency_[fill[static_cast<std::size_t>(b)]++] = a;
  }
}

void Graph::write_edge_list(const std::filesystem::path& path) const {
  std::string out;
  for (const auto& [a, b] : edge_list_) out += std::to_string(a) + ' ' + std::to_string(b) + '\n';
  write_file_atomic(path, out);
}

Graph sample_configuration_model(const DegreeDistribution& dist, std::size_t n_nodes,
                                 std::uint64_t seed) {
  if (n_nodes < 2) throw std::invalid_argument("configuration model needs at least 2 nodes");
  auto rng = make_rng(seed, 0, Stream::graph);
  std::discrete_distribution<int> pick(dist.pmf().begin(), dist.pmf().end());

  std::vector<int> degrees(n_nodes);
  std::vector<int> stubs;
  for (std::size_t i = 0; i < n_nodes; ++i) {
    degrees[i] = dist.k_min() + pick(rng);
    stubs.insert(stubs.end(), static_cast<std::size_t>(degrees[i]), static_cast<int>(i));
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);

  std::vector<std::pair<int, int>> edges;
  edges.reserve(stubs.size() / 2);
  for (std::size_t s = 0; s + 1 < stubs.size(); s += 2) edges.emplace_back(stubs[s], stubs[s + 1]);
  return Graph(std::move(degrees), dist.k_min(), edges);
}

SimulationResult simulate_si(const Graph& graph, const ModelParams& params,
                             const ControlSchedule& schedule, const Network& net, double dt,
                             std::uint64_t seed) {
  const TimeGrid& grid = schedule.grid();
  if (!(dt > 0.0)) throw std::invalid_argument("simulation dt must be positive");
  if (dt > grid.dt() * (1.0 + 1e-12))
    throw std::invalid_argument("simulation dt must not exceed the control grid spacing");
  if (schedule.groups() != net.groups()) throw std::invalid_argument("schedule/network mismatch");

  const auto steps = static_cast<std::size_t>(std::ceil(grid.dt() / dt - 1e-9));
  const double h = grid.dt() / static_cast<double>(steps);
  if (params.profile.peak() * h > 1.0) throw std::invalid_argument("beta * dt exceeds 1");
  if (params.u_max * h > 1.0) throw std::invalid_argument("u_max * dt exceeds 1");
  if (params.alpha * (1.0 + params.v_max) > 1.0 + 1e-12)
    throw std::invalid_argument("alpha * (1 + v_max) exceeds 1");

  const std::size_t nodes = graph.nodes();
  const std::size_t classes = net.classes();
  const auto class_groups = net.partition.class_groups();
  std::vector<int> node_group(nodes);
  std::vector<double> class_size(classes, 0.0);
  for (std::size_t i = 0; i < nodes; ++i) {
    node_group[i] = class_groups[graph.class_index(i)];
    class_size[graph.class_index(i)] += 1.0;
  }

  auto rng = make_rng(seed, 0, Stream::infection);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<char> infected(nodes, 0);
  std::vector<std::size_t> infected_list;
  for (std::size_t i = 0; i < nodes; ++i) {
    if (unit(rng) < params.i0) {
      infected[i] = 1;
      infected_list.push_back(i);
    }
  }

  SimulationResult out;
  out.classes = classes;
  out.steps_per_interval = steps;
  auto record = [&](std::size_t n) {
    std::vector<double> count(classes, 0.0);
    for (std::size_t i : infected_list) count[graph.class_index(i)] += 1.0;
    out.times.push_back(grid.time(n));
    out.infected.push_back(static_cast<double>(infected_list.size()) / static_cast<double>(nodes));
    for (std::size_t j = 0; j < classes; ++j)
      out.class_infected.push_back(class_size[j] > 0.0 ? count[j] / class_size[j] : 0.0);
  };
  record(0);

  std::vector<int> active_neighbors(nodes, 0);
  std::vector<std::size_t> newly;
  std::vector<double> activity(net.groups()), recruit(net.groups());
  for (std::size_t n = 0; n + 1 < grid.points(); ++n) {
    for (std::size_t m = 0; m < net.groups(); ++m) {
      activity[m] = params.alpha * (1.0 + schedule.v(m, n));
      recruit[m] = schedule.u(m, n) * h;
    }
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = grid.time(n) + static_cast<double>(s) * h;
      const double keep = 1.0 - params.beta(t) * h; // per active link

      std::fill(active_neighbors.begin(), active_neighbors.end(), 0);
      for (std::size_t i : infected_list) {
        if (unit(rng) >= activity[static_cast<std::size_t>(node_group[i])]) continue;
        for (int nb : graph.neighbors(i)) ++active_neighbors[static_cast<std::size_t>(nb)];
      }
      newly.clear();
      for (std::size_t i = 0; i < nodes; ++i) {
        if (infected[i]) continue;
        const double escape = std::pow(keep, active_neighbors[i]) *
                              (1.0 - recruit[static_cast<std::size_t>(node_group[i])]);
        if (unit(rng) >= escape) newly.push_back(i);
      }
      for (std::size_t i : newly) {
        infected[i] = 1;
        infected_list.push_back(i);
      }
    }
    record(n + 1);
  }
  return out;
}

EnsembleResult ensemble(const Network& net, const ModelParams& params,
                        const ControlSchedule& schedule, const EnsembleSpec& spec) {
  if (spec.n_runs < 1) throw std::invalid_argument("ensemble needs at least one run");
  const double dt = spec.dt > 0.0 ? spec.dt : schedule.grid().dt() / kDefaultSubsteps;
  const auto runs = static_cast<std::size_t>(spec.n_runs);
  std::vector<std::vector<double>> curves(runs);

  parallel_for(runs, spec.workers, [&](std::size_t r) {
    // independent seeds for the graph and the epidemic of every run
    std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(r)};
    std::uint64_t derived[2];
    std::uint32_t words[4];
    seq.generate(words, words + 4);
    derived[0] = (std::uint64_t{words[0]} << 32) | words[1];
    derived[1] = (std::uint64_t{words[2]} << 32) | words[3];
    const Graph g = sample_configuration_model(net.dist, spec.n_nodes, derived[0]);
    curves[r] = simulate_si(g, params, schedule, net, dt, derived[1]).infected;
  });

  EnsembleResult out;
  out.runs = spec.n_runs;
  const std::size_t points = schedule.grid().points();
  for (std::size_t n = 0; n < points; ++n) out.times.push_back(schedule.grid().time(n));
  out.mean.assign(points, 0.0);
  out.stddev.assign(points, 0.0);
  for (std::size_t n = 0; n < points; ++n) {
    double sum = 0.0;
    for (const auto& c : curves) sum += c[n];
    const double mean = sum / static_cast<double>(runs);
    double sq = 0.0;
    for (const auto& c : curves) sq += (c[n] - mean) * (c[n] - mean);
    out.mean[n] = mean;
    out.stddev[n] = std::sqrt(sq / static_cast<double>(runs));
  }
  return out;
}

} // namespace campaign
