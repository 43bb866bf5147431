#include "arena/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "arena/errors.hpp"

namespace arena {

std::ostream& operator<<(std::ostream& os, const State& s) {
  return os << '(' << s.wins << ',' << s.losses << ')';
}

namespace {

std::string to_string(State s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

}  // namespace

ArenaSpec::ArenaSpec(int m, int n) : m_(m), n_(n) {
  if (m < 1 || n < 1) {
    throw DomainError("arena dimensions must be positive, got m=" +
                      std::to_string(m) + " n=" + std::to_string(n));
  }
  // Binomial path counts must fit in 64 bits.
  if (m + n > 60) {
    throw DomainError("arena dimensions too large: m + n must not exceed 60");
  }
}

bool ArenaSpec::contains(State s) const noexcept {
  return s.wins >= 0 && s.losses >= 0 && s.wins <= m_ && s.losses <= n_ &&
         !(s.wins == m_ && s.losses == n_);
}

bool ArenaSpec::is_terminal(State s) const noexcept {
  return contains(s) && (s.wins == m_ || s.losses == n_);
}

std::size_t ArenaSpec::outcome_index(State terminal) const {
  if (!is_terminal(terminal)) {
    throw DomainError("state " + to_string(terminal) + " is not terminal");
  }
  if (terminal.wins == m_) return static_cast<std::size_t>(terminal.losses);
  return static_cast<std::size_t>(n_ + (m_ - 1 - terminal.wins));
}

State ArenaSpec::outcome_at(std::size_t index) const {
  if (index >= outcome_count()) {
    throw DomainError("outcome index " + std::to_string(index) + " out of range");
  }
  const int k = static_cast<int>(index);
  if (k < n_) return {m_, k};
  return {m_ - 1 - (k - n_), n_};
}

std::vector<State> ArenaSpec::states() const {
  std::vector<State> out;
  out.reserve(state_slots() - 1);
  for (int round = 0; round <= m_ + n_ - 1; ++round) {
    for (int i = std::min(round, m_); i >= 0; --i) {
      const State s{i, round - i};
      if (contains(s)) out.push_back(s);
    }
  }
  return out;
}

std::vector<State> terminal_states(const ArenaSpec& spec) {
  std::vector<State> out;
  out.reserve(spec.outcome_count());
  for (std::size_t k = 0; k < spec.outcome_count(); ++k) out.push_back(spec.outcome_at(k));
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // Exact at every step: result * (n - k + i) is divisible by i.
    result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return result;
}

std::uint64_t path_count(const ArenaSpec& spec, State terminal) {
  if (!spec.is_terminal(terminal)) {
    throw DomainError("path_count requires a terminal state, got " + to_string(terminal));
  }
  if (terminal.wins == spec.m()) {
    return binomial(spec.m() + terminal.losses - 1, spec.m() - 1);
  }
  return binomial(spec.n() + terminal.wins - 1, spec.n() - 1);
}

PlayerParams::PlayerParams(double strength_, double rho_) : strength(strength_), rho(rho_) {
  if (!std::isfinite(strength_)) throw DomainError("player strength must be finite");
  if (!(rho_ >= 0.0) || !std::isfinite(rho_)) {
    throw DomainError("fluctuation coefficient must be finite and nonnegative");
  }
}

ResultCounts::ResultCounts(ArenaSpec spec)
    : spec_(spec), counts_(spec.outcome_count(), 0) {}

void ResultCounts::add(State terminal, std::uint64_t count) {
  counts_[spec_.outcome_index(terminal)] += count;
  total_ += count;
}

std::uint64_t ResultCounts::count(State terminal) const {
  return counts_[spec_.outcome_index(terminal)];
}

PredictionDist::PredictionDist(ArenaSpec spec, std::vector<double> probs)
    : spec_(spec), probs_(std::move(probs)) {
  if (probs_.size() != spec_.outcome_count()) {
    throw DomainError("prediction has " + std::to_string(probs_.size()) +
                      " entries, arena has " + std::to_string(spec_.outcome_count()) +
                      " outcomes");
  }
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || p > 1.0 + kSumTolerance) {
      throw DomainError("prediction entries must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "prediction does not sum to one (sum=" << sum << ')';
    throw DomainError(os.str());
  }
}

PredictionDist PredictionDist::normalized(ArenaSpec spec, std::vector<double> masses) {
  double sum = 0.0;
  for (double p : masses) {
    if (!(p >= 0.0)) throw DomainError("masses must be nonnegative");
    sum += p;
  }
  if (!(sum > 0.0) || !std::isfinite(sum)) {
    throw DomainError("masses must have a positive finite total");
  }
  for (double& p : masses) p /= sum;
  return PredictionDist(spec, std::move(masses));
}

double PredictionDist::operator[](State terminal) const {
  return probs_[spec_.outcome_index(terminal)];
}

double euclidean_distance(const PredictionDist& a, const PredictionDist& b) {
  if (!(a.spec() == b.spec())) throw DomainError("predictions belong to different arenas");
  double sum = 0.0;
  for (std::size_t k = 0; k < a.probs().size(); ++k) {
    const double d = a.probs()[k] - b.probs()[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace arena
