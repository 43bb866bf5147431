#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "arena/types.hpp"

namespace arena {

/// A probability density sampled on a uniform grid.
///
/// Construction checks that the samples are nonnegative and that their
/// trapezoid integral is 1 within kMassTolerance.
class DensityGrid {
 public:
  static constexpr double kMassTolerance = 1e-4;

  DensityGrid(double lo, double step, std::vector<double> values);

  /// N(0,1) density on [lo, hi]; defaults give 1201 nodes.
  static DensityGrid standard_normal(double lo = -6.0, double hi = 6.0, double step = 0.01);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return lo_ + step_ * static_cast<double>(values_.size() - 1); }
  double step() const noexcept { return step_; }
  std::size_t size() const noexcept { return values_.size(); }
  double x(std::size_t k) const noexcept { return lo_ + step_ * static_cast<double>(k); }
  std::span<const double> values() const noexcept { return values_; }

  /// Linear interpolation; zero outside [lo, hi].
  double at(double x) const noexcept;
  double integral() const noexcept;

 private:
  double lo_;
  double step_;
  std::vector<double> values_;
};

/// Composite trapezoid rule.
double trapezoid(std::span<const double> values, double step) noexcept;

/// Running integral from the left end: trapezoid sums with the
/// Euler-Maclaurin end correction -h^2/12 (f'(x) - f'(lo)).
std::vector<double> cumulative_integral(std::span<const double> values, double step);

/// Linear interpolation of samples on a uniform grid; zero outside.
double interpolate(std::span<const double> values, double lo, double step, double x) noexcept;

/// Strength densities p_{i,j} and CDFs F_{i,j} of the players occupying each
/// state of an arena without fluctuations.
class LatticeDensities {
 public:
  static constexpr double kMaxStep = 0.05;

  const ArenaSpec& spec() const noexcept { return spec_; }
  double lo() const noexcept { return lo_; }
  double step() const noexcept { return step_; }
  std::size_t nodes() const noexcept { return nodes_; }
  double x(std::size_t k) const noexcept { return lo_ + step_ * static_cast<double>(k); }

  std::span<const double> density(State s) const;
  std::span<const double> cdf(State s) const;
  double density_at(State s, double x) const;

 private:
  friend LatticeDensities build_lattice(const ArenaSpec& spec, const DensityGrid& prior);

  LatticeDensities(ArenaSpec spec, double lo, double step, std::size_t nodes)
      : spec_(spec), lo_(lo), step_(step), nodes_(nodes),
        densities_(spec.state_slots()), cdfs_(spec.state_slots()) {}

  ArenaSpec spec_;
  double lo_;
  double step_;
  std::size_t nodes_;
  std::vector<std::vector<double>> densities_;
  std::vector<std::vector<double>> cdfs_;
};

/// Runs the density and CDF recursions over every state.
/// Throws ConfigError if the prior grid step exceeds LatticeDensities::kMaxStep.
LatticeDensities build_lattice(const ArenaSpec& spec, const DensityGrid& prior);

/// Unnormalized P(result | X = x) for each terminal result, canonical order.
/// The entries sum to one up to quadrature error.
/// Throws OutOfSupportError where the prior density is below 1e-12.
std::vector<double> exact_result_masses(const LatticeDensities& lattice, double x);

/// exact_result_masses rescaled into a PredictionDist.
PredictionDist exact_result_prob(const LatticeDensities& lattice, double x);

/// Posterior density of a player's strength given observed final results.
/// Throws DegenerateDataError if the likelihood vanishes on the whole grid.
DensityGrid posterior_no_fluct(const LatticeDensities& lattice, const ResultCounts& data);

}  // namespace arena
