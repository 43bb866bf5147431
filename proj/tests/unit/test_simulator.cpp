#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <sstream>

#include "arena/csv.hpp"
#include "arena/errors.hpp"
#include "arena/normal_approx.hpp"
#include "arena/simulator.hpp"
#include "oracles.hpp"

using arena::ArenaSpec;
using arena::PopulationMode;
using arena::SimConfig;
using arena::Simulator;
using arena::State;

namespace {

SimConfig two_two(std::size_t population, std::size_t runs, double rho, std::uint64_t seed) {
  SimConfig c;
  c.spec = ArenaSpec(2, 2);
  c.population = population;
  c.runs = runs;
  c.background_rho = rho;
  c.seed = seed;
  return c;
}

}  // namespace

TEST(SimConfig, ParityRule) {
  auto c = two_two(1020, 1, 0.0, 1);
  EXPECT_THROW(arena::validate(c), arena::ConfigError);
  EXPECT_THROW(Simulator{c}, arena::ConfigError);
  c.population = 1024;
  EXPECT_NO_THROW(arena::validate(c));
  c.population = 1023;
  c.tagged = arena::PlayerParams(0.0, 0.0);
  EXPECT_NO_THROW(arena::validate(c));
  c.runs = 0;
  EXPECT_THROW(arena::validate(c), arena::ConfigError);
}

TEST(Simulator, PoolSizesHalveDeterministically) {
  const auto config = two_two(1024, 3, 0.0, 5);
  const Simulator sim(config);
  std::vector<State> finals(sim.player_count());
  for (std::size_t r = 0; r < config.runs; ++r) {
    std::map<State, std::size_t> sizes;
    const arena::PoolObserver obs = [&](State s, std::span<const std::uint32_t> members,
                                        std::span<const double>) { sizes[s] = members.size(); };
    sim.run(r, finals, &obs);
    EXPECT_EQ(sizes[State(0, 0)], 1024u);
    EXPECT_EQ(sizes[State(1, 0)], 512u);
    EXPECT_EQ(sizes[State(0, 1)], 512u);
    EXPECT_EQ(sizes[State(2, 0)], 256u);
    EXPECT_EQ(sizes[State(1, 1)], 512u);
    EXPECT_EQ(sizes[State(0, 2)], 256u);
    EXPECT_EQ(sizes[State(2, 1)], 256u);
    EXPECT_EQ(sizes[State(1, 2)], 256u);
  }
}

TEST(Simulator, PoolSizeLawInLargerArena) {
  SimConfig c;
  c.spec = ArenaSpec(3, 4);
  c.population = 1u << 8;
  c.background_rho = 0.7;
  c.seed = 11;
  const Simulator sim(c);
  std::vector<State> finals(sim.player_count());
  bool ok = true;
  const arena::PoolObserver obs = [&](State s, std::span<const std::uint32_t> members,
                                      std::span<const double>) {
    if (c.spec.is_terminal(s)) return;
    const int k = s.wins + s.losses;
    const auto expected = (c.population * arena::binomial(k, s.wins)) >> k;
    ok = ok && members.size() == expected;
  };
  sim.run(0, finals, &obs);
  EXPECT_TRUE(ok);
}

TEST(Simulator, TerminalTalliesCoverEveryPlayer) {
  const Simulator sim(two_two(1024, 4, 0.5, 2));
  const auto outcomes = sim.simulate();
  ASSERT_EQ(outcomes.size(), 4u * 1024u);
  const auto all = sim.tally_all();
  for (const auto& c : all) EXPECT_EQ(c.total(), 4u);
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    EXPECT_EQ(outcomes[k].run_index, k / 1024);
    EXPECT_EQ(outcomes[k].player_index, k % 1024);
  }
}

TEST(Simulator, DominantTaggedPlayerAlwaysWins) {
  auto c = two_two(1023, 200, 0.0, 3);
  c.tagged = arena::PlayerParams(10.0, 0.0);
  const auto counts = Simulator(c).tally_player(Simulator::kTaggedIndex);
  EXPECT_EQ(counts.count({2, 0}), 200u);
}

TEST(Simulator, DeterministicAcrossThreadCounts) {
  auto c = two_two(255, 37, 0.8, 99);
  c.tagged = arena::PlayerParams(0.4, 0.8);
  const Simulator sim(c);
  const auto one = sim.simulate(1);
  const auto four = sim.simulate(4);
  EXPECT_EQ(one, four);
  std::ostringstream a, b;
  arena::csv::write_outcomes(a, one);
  arena::csv::write_outcomes(b, arena::simulate(c, 3));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(sim.tally_player(0, 1), sim.tally_player(0, 5));
}

TEST(Simulator, DifferentSeedsDiffer) {
  const auto a = arena::simulate(two_two(64, 5, 0.5, 1));
  const auto b = arena::simulate(two_two(64, 5, 0.5, 2));
  EXPECT_NE(a, b);
}

TEST(Simulator, FirstRunOffsetsTheRunStreams) {
  auto c = two_two(64, 6, 0.5, 4);
  const auto full = arena::simulate(c);
  c.first_run = 4;
  c.runs = 2;
  const auto tail = arena::simulate(c);
  ASSERT_EQ(tail.size(), 2u * 64u);
  for (std::size_t k = 0; k < tail.size(); ++k) EXPECT_EQ(tail[k], full[4 * 64 + k]);
}

TEST(Simulator, FixedPopulationKeepsStrengthsAcrossRuns) {
  auto c = two_two(8, 3, 0.0, 21);
  const Simulator sim(c);
  std::vector<State> finals(8);
  std::vector<std::vector<double>> seen;
  const arena::PoolObserver obs = [&](State s, std::span<const std::uint32_t>,
                                      std::span<const double> strengths) {
    if (s == State{0, 0}) seen.emplace_back(strengths.begin(), strengths.end());
  };
  for (std::size_t r = 0; r < 3; ++r) sim.run(r, finals, &obs);
  EXPECT_EQ(seen[0], seen[1]);
  EXPECT_EQ(seen[1], seen[2]);

  c.mode = PopulationMode::redraw_per_run;
  const Simulator redraw(c);
  seen.clear();
  for (std::size_t r = 0; r < 2; ++r) redraw.run(r, finals, &obs);
  EXPECT_NE(seen[0], seen[1]);
}

TEST(Simulator, TaggedPlayerFrequenciesTrackTheApproximation) {
  // Tagged (1.0, 0.5) among N(0,1) opponents with rho 0.5. The approximation
  // and the Monte Carlo must agree to +-0.02 per outcome over 1e5 runs.
  auto c = two_two(1023, 100000, 0.5, 2024);
  c.tagged = arena::PlayerParams(1.0, 0.5);
  c.mode = PopulationMode::redraw_per_run;
  const auto counts = Simulator(c).tally_player(Simulator::kTaggedIndex);
  const auto approx = arena::result_prob_approx(arena::build_moment_table(c.spec, 0.5), 1.0);
  for (std::size_t t = 0; t < 4; ++t) {
    const double freq = static_cast<double>(counts.counts()[t]) / 1e5;
    EXPECT_NEAR(freq, approx.at(t), 0.02) << c.spec.outcome_at(t);
  }
}

TEST(Simulator, UnknownPlayerIndex) {
  const Simulator sim(two_two(8, 1, 0.0, 1));
  EXPECT_THROW((void)sim.tally_player(8), arena::DomainError);
}

TEST(Tally, EmptyAndUniform) {
  const ArenaSpec spec(2, 2);
  const auto empty = arena::tally({}, spec, 0);
  EXPECT_EQ(empty.total(), 0u);
  std::vector<arena::RunOutcome> outcomes;
  for (std::size_t r = 0; r < 20; ++r) outcomes.push_back({3, r, {0, 2}});
  const auto c = arena::tally(outcomes, spec, 3);
  EXPECT_EQ(c.count({0, 2}), 20u);
  EXPECT_EQ(c.total(), 20u);
  EXPECT_THROW((void)arena::tally(outcomes, spec, 4), arena::DomainError);
}
