#pragma once

#include <vector>

#include "arena/exact_nofluct.hpp"
#include "arena/types.hpp"

namespace arena {

/// E[Phi(a + b*xi)] for xi ~ N(0,1), which equals Phi(a / sqrt(1 + b^2)).
double gauss_phi_expectation(double a, double b) noexcept;

struct Moments {
  double mean = 0.0;
  double variance = 1.0;
};

enum class Step { win, lose };

/// Gaussian moments of the strengths that leave a N(mean, variance) pool
/// through one match under uniform fluctuation `rho`.
///
/// A win shifts the mean up by 2 s^2 / sqrt(2 pi (2 s^2 + rho^2)); a loss
/// shifts it down by the same amount. Both shrink the variance by the factor
/// 1 - 2 s^2 / (pi (2 s^2 + rho^2)).
Moments next_moments(Moments current, double rho, Step direction) noexcept;

/// Approximate Gaussian strength moments for every state of an arena with
/// uniform fluctuations, terminal states included.
///
/// Interior states mix the moments arriving from (i-1, j) and (i, j-1) with
/// weights i/(i+j) and j/(i+j).
class MomentTable {
 public:
  const ArenaSpec& spec() const noexcept { return spec_; }
  double rho() const noexcept { return rho_; }

  Moments at(State s) const;
  double mean(State s) const { return at(s).mean; }
  double variance(State s) const { return at(s).variance; }

  /// Probability that a player of strength x wins a match drawn from state s:
  /// Phi((x - mu) / sqrt(sigma^2 + rho^2)).
  double win_probability(State s, double x) const;

 private:
  friend MomentTable build_moment_table(const ArenaSpec& spec, double rho);

  MomentTable(ArenaSpec spec, double rho)
      : spec_(spec), rho_(rho), moments_(spec.state_slots()) {}

  ArenaSpec spec_;
  double rho_;
  std::vector<Moments> moments_;
};

/// Throws DomainError unless rho > 0.
MomentTable build_moment_table(const ArenaSpec& spec, double rho);

/// Approximate P(result | X = x) by a forward pass over the state lattice:
/// a player at (i, j) moves to (i+1, j) with the state's win probability.
PredictionDist result_prob_approx(const MomentTable& table, double x);

/// Terminal masses C * 2^-(i+j) * gauss_density_{i,j}(x) / p_{0,0}(x) built
/// from the table's Gaussian densities. These do not sum to one; exposed to
/// show why the density-ratio objective is unsound.
std::vector<double> density_ratio_masses(const MomentTable& table, const DensityGrid& prior,
                                         double x);

/// Density-ratio objective prod_t gauss_density_t(x)^N_t / p_{0,0}(x)^(N-1).
/// Kept as a diagnostic; result_prob_approx is the estimator's likelihood.
/// Throws OutOfSupportError where the prior density is below 1e-12.
double likelihood_density_ratio(const MomentTable& table, const DensityGrid& prior,
                                const ResultCounts& data, double x);

}  // namespace arena
