#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "arena/exact_nofluct.hpp"
#include "arena/simulator.hpp"
#include "arena/types.hpp"

namespace arena {

/// Rectangle searched by map_estimate. Must lie within x in [-6, 6] and
/// rho in [0.01, 10].
struct SearchBox {
  double x_lo = -4.0;
  double x_hi = 4.0;
  double rho_lo = 0.01;
  double rho_hi = 6.0;

  void validate() const;
};

struct MapEstimate {
  double x_hat = 0.0;
  double rho_hat = 0.0;
  double log_objective = 0.0;
  bool at_x_bound = false;
  bool at_rho_bound = false;
};

/// log of prod_t P_rho(result_t | x)^N_t * p_{0,0}(x), with the result
/// probabilities from result_prob_approx.
double map_log_objective(const ArenaSpec& spec, const DensityGrid& prior,
                         const ResultCounts& data, double x, double rho);

/// Joint MAP estimate of (strength, rho) by grid search: a coarse pass at
/// step 0.05 over the whole box, then a pass at step 0.005 over the
/// neighbouring coarse cells. Ties resolve to the smallest x, then the
/// smallest rho.
///
/// Throws NonIdentifiableError for a 1-1 arena and DomainError for empty
/// data or an invalid box.
MapEstimate map_estimate(const ArenaSpec& spec, const DensityGrid& prior,
                         const ResultCounts& data, const SearchBox& box = {});

/// Win indicators of M players over N runs of a 1-1 arena.
class WinMatrix {
 public:
  /// `indicators` is row-major, players x rounds, entries 0 or 1.
  WinMatrix(std::size_t players, std::size_t rounds, std::vector<std::uint8_t> indicators);

  /// Builds the matrix from 1-1 simulator outcomes; (1,0) counts as a win.
  static WinMatrix from_outcomes(std::span<const RunOutcome> outcomes, std::size_t players,
                                 std::size_t runs);

  std::size_t players() const noexcept { return players_; }
  std::size_t rounds() const noexcept { return rounds_; }
  bool won(std::size_t player, std::size_t round) const {
    return indicators_.at(player * rounds_ + round) != 0;
  }
  std::span<const std::uint64_t> row_sums() const noexcept { return row_sums_; }

  /// T = (1/(N-1)) * ((1/(M N)) * sum_l Y_l^2 - 1/2).
  double t_stat() const noexcept { return t_stat_; }

 private:
  std::size_t players_;
  std::size_t rounds_;
  std::vector<std::uint8_t> indicators_;
  std::vector<std::uint64_t> row_sums_;
  double t_stat_ = 0.0;
};

struct RhoEstimate {
  double rho = 0.0;
  /// Set when tan^2(pi T) >= 3: the sample is at least as regular as the
  /// no-fluctuation model allows, and rho is reported as 0.
  bool clamped = false;
};

/// rho = sqrt((3 - tan^2(pi T)) / (tan^2(pi T) - 1)).
/// Throws UnresolvedFluctuationError when tan^2(pi T) <= 1.
RhoEstimate rho_from_statistic(double t_stat);

/// Uniform-fluctuation estimate for a 1-1 arena.
RhoEstimate estimate_rho_1v1(const WinMatrix& matrix);

/// Plug-in prediction at the MAP estimate.
PredictionDist predict_map(const ArenaSpec& spec, const MapEstimate& est);

/// Posterior predictive with rho held fixed: result probabilities averaged
/// over the grid posterior of the strength.
PredictionDist predict_bayes(const ArenaSpec& spec, const DensityGrid& prior,
                             const ResultCounts& data, double rho_fixed);

/// Empirical frequencies. Throws DomainError when there is no data.
PredictionDist predict_frequency(const ResultCounts& data);

}  // namespace arena
