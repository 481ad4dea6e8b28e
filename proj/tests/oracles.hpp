#pragma once
// Reference computations written independently of the library internals.

#include "campaign/degree_model.hpp"
#include "campaign/dynamics.hpp"

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

/// Mean-field right-hand side evaluated straight from the pmf, with every
/// class of group m receiving (u[m], v[m]).
inline std::vector<double> rhs(const campaign::DegreeDistribution& dist,
                               const std::vector<int>& group_of, const std::vector<double>& i,
                               double beta, double alpha, const std::vector<double>& u,
                               const std::vector<double>& v) {
  const auto p = dist.pmf();
  double kbar = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) kbar += dist.degree(j) * p[j];
  double pressure = 0.0;
  for (std::size_t l = 0; l + 1 < p.size(); ++l) {
    const double q = dist.degree(l + 1) * p[l + 1] / kbar;
    pressure += (1.0 + v[group_of[l]]) * q * i[l];
  }
  std::vector<double> out(p.size());
  for (std::size_t j = 0; j < p.size(); ++j)
    out[j] = (beta * alpha * dist.degree(j) * pressure + u[group_of[j]]) * (1.0 - i[j]);
  return out;
}

/// Classical RK4 with `steps` equal steps on [0, T]; controls are linear
/// between the schedule's grid points. Returns i(t) at the schedule grid.
inline std::vector<double> rk4_total(const campaign::DegreeDistribution& dist,
                                     const std::vector<int>& group_of,
                                     const campaign::ModelParams& params,
                                     const campaign::ControlSchedule& schedule, int refine) {
  const auto& grid = schedule.grid();
  const std::size_t groups = schedule.groups();
  auto controls = [&](double t, std::vector<double>& u, std::vector<double>& v) {
    const double s = t / grid.dt();
    auto n = static_cast<std::size_t>(std::floor(s));
    if (n >= grid.points() - 1) n = grid.points() - 2;
    const double w = s - static_cast<double>(n);
    for (std::size_t m = 0; m < groups; ++m) {
      u[m] = (1 - w) * schedule.u(m, n) + w * schedule.u(m, n + 1);
      v[m] = (1 - w) * schedule.v(m, n) + w * schedule.v(m, n + 1);
    }
  };
  std::vector<double> u(groups), v(groups);
  auto f = [&](double t, const std::vector<double>& x) {
    controls(t, u, v);
    return rhs(dist, group_of, x, params.beta(t), params.alpha, u, v);
  };
  auto total = [&](const std::vector<double>& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) s += dist.pmf()[j] * x[j];
    return s;
  };

  std::vector<double> x(dist.size(), params.i0), tmp(dist.size());
  std::vector<double> out{total(x)};
  const double h = grid.dt() / refine;
  for (std::size_t n = 0; n + 1 < grid.points(); ++n) {
    for (int s = 0; s < refine; ++s) {
      const double t = grid.time(n) + s * h;
      const auto k1 = f(t, x);
      for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + 0.5 * h * k1[j];
      const auto k2 = f(t + 0.5 * h, tmp);
      for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + 0.5 * h * k2[j];
      const auto k3 = f(t + 0.5 * h, tmp);
      for (std::size_t j = 0; j < x.size(); ++j) tmp[j] = x[j] + h * k3[j];
      const auto k4 = f(t + h, tmp);
      for (std::size_t j = 0; j < x.size(); ++j)
        x[j] += h / 6.0 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
    }
    out.push_back(total(x));
  }
  return out;
}

inline std::vector<int> group_of(const campaign::GroupPartition& part) {
  return {part.class_groups().begin(), part.class_groups().end()};
}

/// Upper-tail probability of a chi-square variate (Wilson-Hilferty).
inline double chi_square_sf(double x, double dof) {
  const double z = (std::cbrt(x / dof) - (1 - 2 / (9 * dof))) / std::sqrt(2 / (9 * dof));
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

} // namespace oracle
