#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "arena/inference.hpp"
#include "arena/simulator.hpp"
#include "arena/types.hpp"

namespace arena::experiments {

/// Run count used by the strength sweep: 20, or 80 once rho reaches 1.
std::size_t default_runs(double rho);

/// from, from + step, ..., to (inclusive up to rounding). Throws DomainError
/// for a nonpositive step or an empty range.
std::vector<double> sweep_points(double from, double to, double step);

/// Seed for sweep point `index`, derived from the master seed.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

struct SweepConfig {
  ArenaSpec spec{2, 2};
  double rho = 0.5;
  std::size_t runs = 20;
  /// Total players including the tagged one.
  std::size_t players = 1024;
  double x_from = 0.0;
  double x_to = 2.0;
  double x_step = 0.01;
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  PopulationMode mode = PopulationMode::fixed;
  SearchBox box;
};

struct SweepRow {
  double x_true = 0.0;
  std::size_t rep = 0;
  MapEstimate estimate;
};

/// For every sweep point and replication: a tagged player of strength x among
/// players - 1 N(0,1) opponents, all with fluctuation rho, plays `runs` runs;
/// its results are fed to map_estimate. Rows follow sweep order.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

/// x_true,x_hat,rho_hat
void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows);

struct CompareConfig {
  SweepConfig sweep;
  /// Runs used for the long-run reference frequencies.
  std::size_t oracle_runs = 100000;
};

struct CompareRow {
  double x_true = 0.0;
  State outcome;
  double model = 0.0;      // plug-in MAP prediction from `runs` results
  double frequency = 0.0;  // empirical frequency over the same results
  double oracle = 0.0;     // frequency over `oracle_runs` further runs
};

/// Model vs frequency predictions for each sweep point, scored against a
/// long-run frequency from disjoint runs of the same population.
std::vector<CompareRow> run_predict_compare(const CompareConfig& config);

/// x_true,wins,losses,model,frequency,oracle
void write_compare(std::ostream& os, const std::vector<CompareRow>& rows);

}  // namespace arena::experiments
