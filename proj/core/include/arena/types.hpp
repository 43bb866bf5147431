#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace arena {

/// A player's tally within a run: wins and losses so far.
struct State {
  int wins = 0;
  int losses = 0;

  friend constexpr auto operator<=>(const State&, const State&) = default;
};

std::ostream& operator<<(std::ostream& os, const State& s);

/// Dimensions of an m-n arena: a run ends at m wins or n losses.
///
/// States are (i, j) with 0 <= i <= m, 0 <= j <= n, excluding (m, n).
/// Terminal results are ordered wins-descending:
/// (m,0), (m,1), ..., (m,n-1), (m-1,n), ..., (0,n).
class ArenaSpec {
 public:
  ArenaSpec(int m, int n);

  int m() const noexcept { return m_; }
  int n() const noexcept { return n_; }

  bool contains(State s) const noexcept;
  bool is_terminal(State s) const noexcept;

  /// Number of terminal results, m + n.
  std::size_t outcome_count() const noexcept {
    return static_cast<std::size_t>(m_ + n_);
  }

  /// Position of a terminal state in the canonical ordering.
  std::size_t outcome_index(State terminal) const;
  State outcome_at(std::size_t index) const;

  /// Dense index of any state in a (m+1) x (n+1) table.
  std::size_t state_index(State s) const noexcept {
    return static_cast<std::size_t>(s.wins) * static_cast<std::size_t>(n_ + 1) +
           static_cast<std::size_t>(s.losses);
  }
  std::size_t state_slots() const noexcept {
    return static_cast<std::size_t>(m_ + 1) * static_cast<std::size_t>(n_ + 1);
  }

  /// Every state (terminal or not) in increasing round order, wins-descending
  /// within a round.
  std::vector<State> states() const;

  friend bool operator==(const ArenaSpec&, const ArenaSpec&) = default;

 private:
  int m_;
  int n_;
};

std::vector<State> terminal_states(const ArenaSpec& spec);

/// Number of monotone lattice paths from (0,0) that end at `terminal`
/// without passing through another terminal state.
std::uint64_t path_count(const ArenaSpec& spec, State terminal);

std::uint64_t binomial(int n, int k);

/// Latent strength and fluctuation coefficient of a single player.
struct PlayerParams {
  double strength = 0.0;
  double rho = 0.0;

  PlayerParams() = default;
  PlayerParams(double strength_, double rho_);
};

/// Tallies of final results for one player, indexed canonically.
class ResultCounts {
 public:
  explicit ResultCounts(ArenaSpec spec);

  const ArenaSpec& spec() const noexcept { return spec_; }

  void add(State terminal, std::uint64_t count = 1);
  std::uint64_t count(State terminal) const;
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return total_ == 0; }

  std::span<const std::uint64_t> counts() const noexcept { return counts_; }

  friend bool operator==(const ResultCounts&, const ResultCounts&) = default;

 private:
  ArenaSpec spec_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

/// Probability vector over the terminal results of an arena.
class PredictionDist {
 public:
  static constexpr double kSumTolerance = 1e-9;

  /// Validates nonnegativity and that the entries sum to one.
  PredictionDist(ArenaSpec spec, std::vector<double> probs);

  /// Rescales nonnegative masses to sum to one.
  static PredictionDist normalized(ArenaSpec spec, std::vector<double> masses);

  const ArenaSpec& spec() const noexcept { return spec_; }
  double operator[](State terminal) const;
  double at(std::size_t outcome_index) const { return probs_.at(outcome_index); }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  ArenaSpec spec_;
  std::vector<double> probs_;
};

double euclidean_distance(const PredictionDist& a, const PredictionDist& b);

}  // namespace arena
