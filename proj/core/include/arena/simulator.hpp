#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "arena/types.hpp"

namespace arena {

/// How background strengths behave across the runs of one experiment.
enum class PopulationMode {
  /// Drawn once from N(0,1) and held for every run (a fixed group of players).
  fixed,
  /// Redrawn from N(0,1) at the start of every run. Each run then faces an
  /// independent sample of the population, which is what the
  /// infinite-population recursions describe.
  redraw_per_run,
};

struct SimConfig {
  ArenaSpec spec{1, 1};
  /// Number of background players (excluding the tagged player).
  std::size_t population = 2;
  std::size_t runs = 1;
  /// Index of the first run. Runs first_run .. first_run + runs - 1 are
  /// played, each from its own substream, so disjoint ranges over the same
  /// seed share the population but not the run randomness.
  std::size_t first_run = 0;
  double background_rho = 0.0;
  /// The studied player; always player index 0 when present.
  std::optional<PlayerParams> tagged;
  std::uint64_t seed = 0;
  PopulationMode mode = PopulationMode::fixed;

  std::size_t player_count() const noexcept { return population + (tagged ? 1 : 0); }
};

/// Throws ConfigError unless every non-terminal pool is even in every round.
void validate(const SimConfig& config);

struct RunOutcome {
  std::size_t player_index = 0;
  std::size_t run_index = 0;
  State final;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

/// Called for every pool once it is complete, before it is paired.
/// `members` are player indices; `strengths` is indexed by player.
using PoolObserver =
    std::function<void(State state, std::span<const std::uint32_t> members,
                       std::span<const double> strengths)>;

/// Monte Carlo realization of an m-n arena with Gaussian per-round
/// fluctuations: a performance is strength + (rho / sqrt 2) * N(0,1).
///
/// Every run draws from its own substream keyed by (seed, run index), so
/// results are identical for any number of worker threads.
class Simulator {
 public:
  static constexpr std::size_t kTaggedIndex = 0;

  explicit Simulator(SimConfig config);

  const SimConfig& config() const noexcept { return config_; }
  std::size_t player_count() const noexcept { return base_strengths_.size(); }

  /// Strengths at construction; background entries are replaced every run
  /// in PopulationMode::redraw_per_run.
  std::span<const double> strengths() const noexcept { return base_strengths_; }

  /// Plays the run with absolute index `run_index`; `finals[l]` receives
  /// player l's result.
  void run(std::size_t run_index, std::span<State> finals,
           const PoolObserver* observer = nullptr) const;

  /// All outcomes, ordered by run and then by player index.
  std::vector<RunOutcome> simulate(unsigned threads = 0) const;

  /// Result counts for every player, streamed without storing outcomes.
  std::vector<ResultCounts> tally_all(unsigned threads = 0) const;

  ResultCounts tally_player(std::size_t player_index, unsigned threads = 0) const;

 private:
  struct Workspace;

  void run_with(Workspace& ws, std::size_t run_index, std::span<State> finals,
                const PoolObserver* observer) const;

  template <typename PerRun>
  void for_each_run(unsigned threads, PerRun&& per_run) const;

  SimConfig config_;
  std::vector<double> base_strengths_;
  std::vector<double> player_rho_;
  std::vector<State> states_;
};

/// Convenience wrapper: constructs a Simulator and returns all outcomes.
std::vector<RunOutcome> simulate(const SimConfig& config, unsigned threads = 0);

/// Counts `player_index`'s results among `outcomes`.
/// Throws DomainError if outcomes are nonempty and the player never appears.
ResultCounts tally(std::span<const RunOutcome> outcomes, const ArenaSpec& spec,
                   std::size_t player_index);

}  // namespace arena
