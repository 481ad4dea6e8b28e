#pragma once

#include <filesystem>
#include <span>
#include <vector>

namespace campaign {

/// Probability mass over the dense degree range [k_min, k_max].
///
/// Classes with zero mass are kept so that index arithmetic stays
/// `index = k - k_min` everywhere downstream.
class DegreeDistribution {
public:
  DegreeDistribution(int k_min, std::vector<double> pmf);

  int k_min() const { return k_min_; }
  int k_max() const { return k_min_ + static_cast<int>(pmf_.size()) - 1; }
  std::size_t size() const { return pmf_.size(); }

  std::span<const double> pmf() const { return pmf_; }
  double operator[](int k) const;
  int degree(std::size_t index) const { return k_min_ + static_cast<int>(index); }

  double mean_degree() const;
  std::vector<double> cumulative() const;

private:
  int k_min_;
  std::vector<double> pmf_;
};

/// Neighbor (r_k = k p_k / kbar) and excess (q_k = r_{k+1}) degree
/// distributions, both indexed like the source distribution.
struct NeighborDistributions {
  std::vector<double> r;
  std::vector<double> q;
  double mean_degree = 0.0;
};

/// Contiguous degree-class groups. Group m holds degrees
/// (boundaries[m], boundaries[m+1]].
class GroupPartition {
public:
  GroupPartition(const DegreeDistribution& dist, std::vector<int> boundaries);

  std::size_t groups() const { return masses_.size(); }
  std::span<const int> boundaries() const { return boundaries_; }
  std::span<const double> masses() const { return masses_; }

  /// Group index of every class index of the distribution.
  std::span<const int> class_groups() const { return class_group_; }

  /// Half-open class-index range [first, last) covered by group m.
  std::size_t first_index(std::size_t m) const { return first_index_[m]; }
  std::size_t last_index(std::size_t m) const { return first_index_[m + 1]; }

private:
  std::vector<int> boundaries_;
  std::vector<double> masses_;
  std::vector<int> class_group_;
  std::vector<std::size_t> first_index_;
};

DegreeDistribution make_truncated_poisson(double lambda, int k_min, int k_max);
DegreeDistribution make_power_law(double gamma, int k_min, int k_max);

NeighborDistributions derive_neighbor_distributions(const DegreeDistribution& dist);

/// Sequential split into M groups of roughly equal mass: boundary m is the
/// degree whose cumulative mass is nearest to m/M (ties go to the earlier
/// degree), subject to every group keeping at least one class with mass.
GroupPartition partition_equal_mass(const DegreeDistribution& dist, int groups);

std::vector<double> group_mean_degrees(const DegreeDistribution& dist,
                                       const GroupPartition& part);

/// Two-column tables (degree, probability) for the pmf and the cumulative pmf.
void write_degree_csv(const DegreeDistribution& dist,
                      const std::filesystem::path& pmf_path,
                      const std::filesystem::path& cdf_path);

} // namespace campaign
