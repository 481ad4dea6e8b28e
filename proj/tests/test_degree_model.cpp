#include "doctest.h"
#include "fixtures.hpp"

#include "campaign/degree_model.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

using namespace campaign;

namespace {

double sum(std::span<const double> v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::vector<int> bounds(const GroupPartition& p) { return {p.boundaries().begin(), p.boundaries().end()}; }

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("truncated poisson") {
  const auto er = fixtures::er();
  CHECK(er.k_min() == 1);
  CHECK(er.k_max() == 60);
  CHECK(std::abs(er.mean_degree() - 23.60) <= 0.05);
  CHECK(std::abs(sum(er.pmf()) - 1.0) <= 1e-12);

  // log-space evaluation against the direct product form
  double norm = 0.0;
  std::vector<double> direct;
  for (int k = 1; k <= 60; ++k) {
    double term = std::exp(-23.60);
    for (int i = 1; i <= k; ++i) term *= 23.60 / i;
    direct.push_back(term);
    norm += term;
  }
  for (int k = 1; k <= 60; ++k) CHECK(er[k] == doctest::Approx(direct[k - 1] / norm).epsilon(1e-12));

  const auto point = make_truncated_poisson(5.0, 3, 3);
  CHECK(point.size() == 1);
  CHECK(point[3] == 1.0);

  CHECK_THROWS_AS(make_truncated_poisson(0.0, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(make_truncated_poisson(2.0, 10, 5), std::invalid_argument);
}

TEST_CASE("power law") {
  CHECK(std::abs(fixtures::pl2().mean_degree() - 22.47) <= 0.01);
  CHECK(std::abs(fixtures::pl3().mean_degree() - 24.03) <= 0.01);

  const auto uniform = make_power_law(0.0, 1, 4);
  for (int k = 1; k <= 4; ++k) CHECK(uniform[k] == doctest::Approx(0.25));
  CHECK(std::abs(sum(fixtures::pl2().pmf()) - 1.0) <= 1e-12);

  // p_k ratios follow k^-gamma
  const auto pl3 = fixtures::pl3();
  CHECK(pl3[26] / pl3[13] == doctest::Approx(std::pow(2.0, -3.0)));

  CHECK_THROWS_AS(make_power_law(3.0, 0, 10), std::invalid_argument);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(DegreeDistribution(1, {0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution(1, {1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeDistribution(1, {}), std::invalid_argument);
  CHECK_NOTHROW(DegreeDistribution(1, {0.5, 0.5}));
}

TEST_CASE("neighbor and excess distributions") {
  SUBCASE("regular graph") {
    const DegreeDistribution five(5, {1.0});
    const auto nd = derive_neighbor_distributions(five);
    CHECK(nd.mean_degree == 5.0);
    CHECK(nd.r[0] == 1.0);
    // q_4 = 1 sits below the class range; the only in-range entry is q_5 = 0
    CHECK(nd.q[0] == 0.0);
  }
  SUBCASE("two classes") {
    const DegreeDistribution two(1, {0.5, 0.5});
    const auto nd = derive_neighbor_distributions(two);
    CHECK(nd.mean_degree == doctest::Approx(1.5));
    CHECK(nd.r[0] == doctest::Approx(1.0 / 3.0));
    CHECK(nd.r[1] == doctest::Approx(2.0 / 3.0));
    CHECK(nd.q[0] == doctest::Approx(2.0 / 3.0)); // q_1 = r_2
    CHECK(nd.q[1] == 0.0);                        // q_2 = r_3 = 0
  }
  SUBCASE("q vanishes at k_max and r sums to one") {
    for (const auto& dist : {fixtures::er(), fixtures::pl2(), fixtures::pl3(), make_power_law(2.5, 2, 40)}) {
      const auto nd = derive_neighbor_distributions(dist);
      CHECK(nd.q.back() == 0.0);
      CHECK(std::abs(sum(nd.r) - 1.0) <= 1e-12);
      CHECK(sum(nd.q) == doctest::Approx(1.0 - nd.r.front()).epsilon(1e-12));
    }
  }
}

TEST_CASE("equal-mass partition reproduces the published groups") {
  CHECK(bounds(partition_equal_mass(fixtures::er(), 3)) == std::vector<int>{0, 21, 25, 60});
  CHECK(bounds(partition_equal_mass(fixtures::pl3(), 3)) == std::vector<int>{12, 15, 21, 300});
  CHECK(bounds(partition_equal_mass(fixtures::pl2(), 3)) == std::vector<int>{5, 8, 15, 300});
}

TEST_CASE("partition structure") {
  const auto pl2 = fixtures::pl2();
  SUBCASE("single group") {
    const auto p = partition_equal_mass(pl2, 1);
    CHECK(p.groups() == 1);
    CHECK(p.masses()[0] == doctest::Approx(1.0));
    CHECK(p.first_index(0) == 0);
    CHECK(p.last_index(0) == pl2.size());
  }
  SUBCASE("masses and class map are consistent for any M") {
    for (int m = 1; m <= 12; ++m) {
      const auto p = partition_equal_mass(pl2, m);
      REQUIRE(p.groups() == static_cast<std::size_t>(m));
      CHECK(sum(p.masses()) == doctest::Approx(1.0));
      for (std::size_t g = 0; g < p.groups(); ++g) {
        CHECK(p.masses()[g] > 0.0);
        for (std::size_t j = p.first_index(g); j < p.last_index(g); ++j)
          CHECK(p.class_groups()[j] == static_cast<int>(g));
      }
    }
  }
  SUBCASE("too many groups") {
    const DegreeDistribution sparse(1, {0.5, 0.0, 0.5});
    CHECK(partition_equal_mass(sparse, 2).groups() == 2);
    CHECK_THROWS_AS(partition_equal_mass(sparse, 3), std::invalid_argument);
  }
  SUBCASE("explicit boundaries are checked") {
    CHECK_THROWS_AS(GroupPartition(pl2, {5, 200}), std::invalid_argument);
    CHECK_THROWS_AS(GroupPartition(pl2, {5, 20, 20, 300}), std::invalid_argument);
  }
}

TEST_CASE("group mean degrees") {
  const auto mean_of = [](const DegreeDistribution& d, int groups) {
    return group_mean_degrees(d, partition_equal_mass(d, groups));
  };
  const auto pl3 = mean_of(fixtures::pl3(), 3);
  const auto pl2 = mean_of(fixtures::pl2(), 3);
  const std::vector<double> pl3_paper{13.9, 18.0, 40.1}, pl2_paper{6.8, 11.3, 48.5};
  for (int m = 0; m < 3; ++m) {
    CHECK(std::abs(pl3[m] - pl3_paper[m]) <= 0.1);
    CHECK(std::abs(pl2[m] - pl2_paper[m]) <= 0.1);
  }

  // ER against a direct weighted average over the published groups
  const auto er = fixtures::er();
  const auto ours = mean_of(er, 3);
  const std::vector<std::pair<int, int>> ranges{{1, 21}, {22, 25}, {26, 60}};
  for (std::size_t m = 0; m < 3; ++m) {
    double mass = 0.0, moment = 0.0;
    for (int k = ranges[m].first; k <= ranges[m].second; ++k) {
      mass += er[k];
      moment += k * er[k];
    }
    CHECK(ours[m] == doctest::Approx(moment / mass).epsilon(1e-12));
  }
  CHECK(std::abs(ours[1] - 23.5) <= 0.1);
  CHECK(std::abs(ours[2] - 28.9) <= 0.1);

  CHECK(mean_of(DegreeDistribution(5, {1.0}), 1)[0] == 5.0);
}

TEST_CASE("degree tables") {
  const auto dir = std::filesystem::temp_directory_path() / "campaign_degree_csv";
  std::filesystem::remove_all(dir);
  const DegreeDistribution d(2, {0.25, 0.25, 0.5});
  write_degree_csv(d, dir / "pmf.csv", dir / "cdf.csv");
  CHECK(slurp(dir / "pmf.csv") == "degree,probability\n2,0.25\n3,0.25\n4,0.5\n");
  CHECK(slurp(dir / "cdf.csv") == "degree,probability\n2,0.25\n3,0.5\n4,1\n");
  std::filesystem::remove_all(dir);
}
