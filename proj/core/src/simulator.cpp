#include "arena/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <utility>

#include "arena/errors.hpp"
#include "arena/rng.hpp"

namespace arena {

void validate(const SimConfig& config) {
  if (config.population == 0) throw ConfigError("population must be positive");
  if (config.runs == 0) throw ConfigError("runs must be positive");
  if (!(config.background_rho >= 0.0) || !std::isfinite(config.background_rho)) {
    throw ConfigError("background fluctuation coefficient must be finite and nonnegative");
  }
  const int depth = config.spec.m() + config.spec.n() - 1;
  if (depth >= 63) throw ConfigError("arena too deep for pool-parity check");
  const std::uint64_t modulus = std::uint64_t{1} << depth;
  const std::size_t total = config.player_count();
  if (total % modulus != 0) {
    throw ConfigError("pool parity violated: " + std::to_string(total) +
                      " players is not divisible by 2^" + std::to_string(depth) + " = " +
                      std::to_string(modulus));
  }
  if (total > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("too many players");
  }
}

struct Simulator::Workspace {
  std::vector<std::vector<std::uint32_t>> pools;
  std::vector<double> strengths;
};

Simulator::Simulator(SimConfig config) : config_(std::move(config)) {
  validate(config_);
  const std::size_t total = config_.player_count();
  base_strengths_.resize(total);
  player_rho_.assign(total, config_.background_rho);

  std::size_t first_background = 0;
  if (config_.tagged) {
    base_strengths_[kTaggedIndex] = config_.tagged->strength;
    player_rho_[kTaggedIndex] = config_.tagged->rho;
    first_background = 1;
  }
  auto rng = Xoshiro256pp::substream(config_.seed, StreamKind::population, 0);
  std::normal_distribution<double> normal;
  for (std::size_t l = first_background; l < total; ++l) base_strengths_[l] = normal(rng);

  states_ = config_.spec.states();
}

void Simulator::run(std::size_t run_index, std::span<State> finals,
                    const PoolObserver* observer) const {
  Workspace ws;
  run_with(ws, run_index, finals, observer);
}

void Simulator::run_with(Workspace& ws, std::size_t run_index, std::span<State> finals,
                         const PoolObserver* observer) const {
  const ArenaSpec& spec = config_.spec;
  const std::size_t total = player_count();
  if (finals.size() != total) throw DomainError("finals span must hold one state per player");

  auto rng = Xoshiro256pp::substream(config_.seed, StreamKind::run, run_index);
  std::normal_distribution<double> normal;

  ws.strengths = base_strengths_;
  if (config_.mode == PopulationMode::redraw_per_run) {
    const std::size_t first_background = config_.tagged ? 1 : 0;
    for (std::size_t l = first_background; l < total; ++l) ws.strengths[l] = normal(rng);
  }

  ws.pools.resize(spec.state_slots());
  for (auto& pool : ws.pools) pool.clear();
  auto& start = ws.pools[spec.state_index({0, 0})];
  start.resize(total);
  std::iota(start.begin(), start.end(), std::uint32_t{0});

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (const State s : states_) {
    auto& pool = ws.pools[spec.state_index(s)];
    if (observer != nullptr) (*observer)(s, pool, ws.strengths);
    if (spec.is_terminal(s)) {
      for (std::uint32_t l : pool) finals[l] = s;
      continue;
    }
    // Fisher-Yates; pairs are then consecutive entries.
    for (std::size_t k = pool.size(); k > 1; --k) {
      std::swap(pool[k - 1], pool[rng.below(k)]);
    }
    auto& winners = ws.pools[spec.state_index({s.wins + 1, s.losses})];
    auto& losers = ws.pools[spec.state_index({s.wins, s.losses + 1})];
    for (std::size_t q = 0; q + 1 < pool.size(); q += 2) {
      const std::uint32_t a = pool[q];
      const std::uint32_t b = pool[q + 1];
      double perf_a = ws.strengths[a];
      double perf_b = ws.strengths[b];
      if (player_rho_[a] > 0.0) perf_a += player_rho_[a] * inv_sqrt2 * normal(rng);
      if (player_rho_[b] > 0.0) perf_b += player_rho_[b] * inv_sqrt2 * normal(rng);
      // Ties go to the first-listed player.
      if (perf_a >= perf_b) {
        winners.push_back(a);
        losers.push_back(b);
      } else {
        winners.push_back(b);
        losers.push_back(a);
      }
    }
  }
}

template <typename PerRun>
void Simulator::for_each_run(unsigned threads, PerRun&& per_run) const {
  const std::size_t runs = config_.runs;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min<std::size_t>(threads, runs);

  auto block = [&](std::size_t worker) {
    Workspace ws;
    std::vector<State> finals(player_count());
    const std::size_t begin = runs * worker / workers;
    const std::size_t end = runs * (worker + 1) / workers;
    for (std::size_t r = begin; r < end; ++r) {
      run_with(ws, config_.first_run + r, finals, nullptr);
      per_run(worker, r, std::span<const State>(finals));
    }
  };

  if (workers == 1) {
    block(0);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          block(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<RunOutcome> Simulator::simulate(unsigned threads) const {
  const std::size_t total = player_count();
  std::vector<RunOutcome> out(config_.runs * total);
  for_each_run(threads, [&](std::size_t, std::size_t r, std::span<const State> finals) {
    for (std::size_t l = 0; l < total; ++l) {
      out[r * total + l] = {l, config_.first_run + r, finals[l]};
    }
  });
  return out;
}

std::vector<ResultCounts> Simulator::tally_all(unsigned threads) const {
  const ArenaSpec& spec = config_.spec;
  const std::size_t total = player_count();
  const std::size_t outcomes = spec.outcome_count();
  const std::size_t workers =
      std::min<std::size_t>(threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : threads,
                            config_.runs);
  std::vector<std::vector<std::uint64_t>> partial(workers,
                                                  std::vector<std::uint64_t>(total * outcomes));
  for_each_run(static_cast<unsigned>(workers),
               [&](std::size_t worker, std::size_t, std::span<const State> finals) {
                 auto& acc = partial[worker];
                 for (std::size_t l = 0; l < total; ++l) {
                   ++acc[l * outcomes + spec.outcome_index(finals[l])];
                 }
               });
  std::vector<ResultCounts> out(total, ResultCounts(spec));
  for (std::size_t l = 0; l < total; ++l) {
    for (std::size_t k = 0; k < outcomes; ++k) {
      std::uint64_t sum = 0;
      for (const auto& acc : partial) sum += acc[l * outcomes + k];
      if (sum > 0) out[l].add(spec.outcome_at(k), sum);
    }
  }
  return out;
}

ResultCounts Simulator::tally_player(std::size_t player_index, unsigned threads) const {
  if (player_index >= player_count()) {
    throw DomainError("unknown player index " + std::to_string(player_index));
  }
  const ArenaSpec& spec = config_.spec;
  const std::size_t workers =
      std::min<std::size_t>(threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : threads,
                            config_.runs);
  std::vector<std::vector<std::uint64_t>> partial(
      workers, std::vector<std::uint64_t>(spec.outcome_count()));
  for_each_run(static_cast<unsigned>(workers),
               [&](std::size_t worker, std::size_t, std::span<const State> finals) {
                 ++partial[worker][spec.outcome_index(finals[player_index])];
               });
  ResultCounts counts(spec);
  for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
    std::uint64_t sum = 0;
    for (const auto& acc : partial) sum += acc[k];
    if (sum > 0) counts.add(spec.outcome_at(k), sum);
  }
  return counts;
}

std::vector<RunOutcome> simulate(const SimConfig& config, unsigned threads) {
  return Simulator(config).simulate(threads);
}

ResultCounts tally(std::span<const RunOutcome> outcomes, const ArenaSpec& spec,
                   std::size_t player_index) {
  ResultCounts counts(spec);
  bool seen = false;
  for (const auto& o : outcomes) {
    if (o.player_index != player_index) continue;
    seen = true;
    counts.add(o.final);
  }
  if (!outcomes.empty() && !seen) {
    throw DomainError("player " + std::to_string(player_index) + " does not appear in outcomes");
  }
  return counts;
}

}  // namespace arena
