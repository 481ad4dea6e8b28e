#pragma once

#include "campaign/degree_model.hpp"
#include "campaign/dynamics.hpp"

#include <string>

namespace fixtures {

inline campaign::DegreeDistribution er() { return campaign::make_truncated_poisson(23.60, 1, 60); }
inline campaign::DegreeDistribution pl2() { return campaign::make_power_law(2.0, 6, 300); }
inline campaign::DegreeDistribution pl3() { return campaign::make_power_law(3.0, 13, 300); }

inline campaign::DegreeDistribution named(const std::string& name) {
  if (name == "ER") return er();
  if (name == "PL2") return pl2();
  return pl3();
}

inline campaign::Network network(const std::string& name, int groups) {
  auto dist = named(name);
  auto part = campaign::partition_equal_mass(dist, groups);
  return campaign::Network(std::move(dist), std::move(part));
}

inline campaign::Network network(campaign::DegreeDistribution dist, int groups) {
  auto part = campaign::partition_equal_mass(dist, groups);
  return campaign::Network(std::move(dist), std::move(part));
}

inline campaign::TimeGrid default_grid() { return campaign::TimeGrid(1.0, 50); }

} // namespace fixtures
