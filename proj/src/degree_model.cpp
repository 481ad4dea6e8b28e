#include "campaign/degree_model.hpp"

#include "campaign/csv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace campaign {

namespace {

constexpr double kMassTolerance = 1e-12;

std::vector<double> normalized(std::vector<double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0) || !std::isfinite(total))
    throw std::invalid_argument("degree weights must have positive finite total");
  for (double& w : weights) w /= total;
  return weights;
}

void check_range(int k_min, int k_max) {
  if (k_min < 0) throw std::invalid_argument("k_min must be non-negative");
  if (k_max < k_min) throw std::invalid_argument("empty degree range");
}

} // namespace

DegreeDistribution::DegreeDistribution(int k_min, std::vector<double> pmf)
    : k_min_(k_min), pmf_(std::move(pmf)) {
  if (k_min_ < 0) throw std::invalid_argument("k_min must be non-negative");
  if (pmf_.empty()) throw std::invalid_argument("empty degree range");
  double total = 0.0;
  for (double p : pmf_) {
    if (!(p >= 0.0) || !std::isfinite(p))
      throw std::invalid_argument("pmf entries must be finite and non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kMassTolerance)
    throw std::invalid_argument("pmf must sum to 1, got " + std::to_string(total));
}

double DegreeDistribution::operator[](int k) const {
  if (k < k_min() || k > k_max()) return 0.0;
  return pmf_[static_cast<std::size_t>(k - k_min_)];
}

double DegreeDistribution::mean_degree() const {
  double mean = 0.0;
  for (std::size_t j = 0; j < pmf_.size(); ++j) mean += degree(j) * pmf_[j];
  return mean;
}

std::vector<double> DegreeDistribution::cumulative() const {
  std::vector<double> cdf(pmf_.size());
  std::partial_sum(pmf_.begin(), pmf_.end(), cdf.begin());
  return cdf;
}

DegreeDistribution make_truncated_poisson(double lambda, int k_min, int k_max) {
  if (!(lambda > 0.0)) throw std::invalid_argument("poisson lambda must be positive");
  check_range(k_min, k_max);
  // log-space evaluation keeps large k away from factorial overflow
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  const double log_lambda = std::log(lambda);
  for (int k = k_min; k <= k_max; ++k)
    weights.push_back(std::exp(-lambda + k * log_lambda - std::lgamma(k + 1.0)));
  return DegreeDistribution(k_min, normalized(std::move(weights)));
}

DegreeDistribution make_power_law(double gamma, int k_min, int k_max) {
  check_range(k_min, k_max);
  if (k_min < 1) throw std::invalid_argument("power law requires k_min >= 1");
  if (!std::isfinite(gamma)) throw std::invalid_argument("power law exponent must be finite");
  std::vector<double> weights;
  weights.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (int k = k_min; k <= k_max; ++k) weights.push_back(std::pow(double(k), -gamma));
  return DegreeDistribution(k_min, normalized(std::move(weights)));
}

NeighborDistributions derive_neighbor_distributions(const DegreeDistribution& dist) {
  NeighborDistributions out;
  out.mean_degree = dist.mean_degree();
  if (!(out.mean_degree > 0.0))
    throw std::invalid_argument("neighbor distribution undefined for zero mean degree");

  const auto pmf = dist.pmf();
  const std::size_t n = pmf.size();
  out.r.resize(n);
  out.q.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) out.r[j] = dist.degree(j) * pmf[j] / out.mean_degree;
  for (std::size_t j = 0; j + 1 < n; ++j) out.q[j] = out.r[j + 1];
  return out;
}

GroupPartition::GroupPartition(const DegreeDistribution& dist, std::vector<int> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.size() < 2) throw std::invalid_argument("partition needs at least one group");
  if (boundaries_.front() != dist.k_min() - 1 || boundaries_.back() != dist.k_max())
    throw std::invalid_argument("partition must span [k_min, k_max]");
  if (!std::is_sorted(boundaries_.begin(), boundaries_.end(), std::less_equal<>{}) ||
      std::adjacent_find(boundaries_.begin(), boundaries_.end()) != boundaries_.end())
    throw std::invalid_argument("partition boundaries must be strictly increasing");

  const std::size_t groups = boundaries_.size() - 1;
  masses_.assign(groups, 0.0);
  class_group_.resize(dist.size());
  first_index_.resize(groups + 1);
  for (std::size_t m = 0; m <= groups; ++m)
    first_index_[m] = static_cast<std::size_t>(boundaries_[m] + 1 - dist.k_min());

  const auto pmf = dist.pmf();
  for (std::size_t m = 0; m < groups; ++m) {
    for (std::size_t j = first_index_[m]; j < first_index_[m + 1]; ++j) {
      class_group_[j] = static_cast<int>(m);
      masses_[m] += pmf[j];
    }
  }
}

GroupPartition partition_equal_mass(const DegreeDistribution& dist, int groups) {
  if (groups < 1) throw std::invalid_argument("number of groups must be at least 1");
  const auto pmf = dist.pmf();
  std::vector<std::size_t> occupied;
  for (std::size_t j = 0; j < pmf.size(); ++j)
    if (pmf[j] > 0.0) occupied.push_back(j);
  const auto m_total = static_cast<std::size_t>(groups);
  if (m_total > occupied.size())
    throw std::invalid_argument("more groups (" + std::to_string(groups) +
                                ") than occupied degree classes (" +
                                std::to_string(occupied.size()) + ")");

  const std::vector<double> cdf = dist.cumulative();
  std::vector<int> boundaries{dist.k_min() - 1};
  std::size_t next = 0; // first candidate position in `occupied`
  for (std::size_t m = 1; m < m_total; ++m) {
    const double target = double(m) / double(m_total);
    // leave one occupied class for every remaining group
    const std::size_t last = occupied.size() - (m_total - m) - 1;
    std::size_t best = next;
    double best_gap = std::abs(cdf[occupied[next]] - target);
    for (std::size_t pos = next + 1; pos <= last; ++pos) {
      const double gap = std::abs(cdf[occupied[pos]] - target);
      if (gap < best_gap) {
        best = pos;
        best_gap = gap;
      }
    }
    boundaries.push_back(dist.degree(occupied[best]));
    next = best + 1;
  }
  boundaries.push_back(dist.k_max());
  return GroupPartition(dist, std::move(boundaries));
}

std::vector<double> group_mean_degrees(const DegreeDistribution& dist,
                                       const GroupPartition& part) {
  const auto pmf = dist.pmf();
  std::vector<double> means(part.groups());
  for (std::size_t m = 0; m < part.groups(); ++m) {
    double mass = 0.0;
    double weighted = 0.0;
    for (std::size_t j = part.first_index(m); j < part.last_index(m); ++j) {
      mass += pmf[j];
      weighted += dist.degree(j) * pmf[j];
    }
    if (!(mass > 0.0))
      throw std::invalid_argument("group " + std::to_string(m + 1) + " has zero mass");
    means[m] = weighted / mass;
  }
  return means;
}

void write_degree_csv(const DegreeDistribution& dist,
                      const std::filesystem::path& pmf_path,
                      const std::filesystem::path& cdf_path) {
  CsvTable pmf_table({"degree", "probability"});
  CsvTable cdf_table({"degree", "probability"});
  const auto pmf = dist.pmf();
  const auto cdf = dist.cumulative();
  for (std::size_t j = 0; j < pmf.size(); ++j) {
    pmf_table.add_row({double(dist.degree(j)), pmf[j]});
    cdf_table.add_row({double(dist.degree(j)), cdf[j]});
  }
  write_file_atomic(pmf_path, pmf_table.str());
  write_file_atomic(cdf_path, cdf_table.str());
}

} // namespace campaign
