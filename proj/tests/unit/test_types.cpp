#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "arena/errors.hpp"
#include "arena/types.hpp"
#include "oracles.hpp"

using arena::ArenaSpec;
using arena::State;

TEST(ArenaSpec, RejectsNonPositiveDimensions) {
  EXPECT_THROW(ArenaSpec(0, 1), arena::DomainError);
  EXPECT_THROW(ArenaSpec(1, 0), arena::DomainError);
  EXPECT_THROW(ArenaSpec(-2, 3), arena::DomainError);
  EXPECT_NO_THROW(ArenaSpec(1, 1));
}

TEST(ArenaSpec, ContainsAndTerminal) {
  const ArenaSpec spec(2, 2);
  EXPECT_TRUE(spec.contains({0, 0}));
  EXPECT_TRUE(spec.contains({2, 1}));
  EXPECT_FALSE(spec.contains({2, 2}));
  EXPECT_FALSE(spec.contains({3, 0}));
  EXPECT_FALSE(spec.contains({-1, 0}));
  EXPECT_TRUE(spec.is_terminal({2, 0}));
  EXPECT_TRUE(spec.is_terminal({0, 2}));
  EXPECT_FALSE(spec.is_terminal({1, 1}));
  EXPECT_FALSE(spec.is_terminal({2, 2}));
}

TEST(TerminalStates, OneOne) {
  EXPECT_EQ(arena::terminal_states(ArenaSpec(1, 1)), (std::vector<State>{{1, 0}, {0, 1}}));
}

TEST(TerminalStates, TwoTwo) {
  EXPECT_EQ(arena::terminal_states(ArenaSpec(2, 2)),
            (std::vector<State>{{2, 0}, {2, 1}, {1, 2}, {0, 2}}));
}

TEST(TerminalStates, FiveOne) {
  EXPECT_EQ(arena::terminal_states(ArenaSpec(5, 1)),
            (std::vector<State>{{5, 0}, {4, 1}, {3, 1}, {2, 1}, {1, 1}, {0, 1}}));
}

TEST(TerminalStates, PartitionForSmallArenas) {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const ArenaSpec spec(m, n);
      const auto ts = arena::terminal_states(spec);
      ASSERT_EQ(ts.size(), static_cast<std::size_t>(m + n));
      const std::set<State> unique(ts.begin(), ts.end());
      EXPECT_EQ(unique.size(), ts.size());
      for (std::size_t k = 0; k < ts.size(); ++k) {
        EXPECT_TRUE(spec.is_terminal(ts[k]));
        EXPECT_EQ(spec.outcome_index(ts[k]), k);
        EXPECT_EQ(spec.outcome_at(k), ts[k]);
      }
    }
  }
}

TEST(TerminalStates, OutcomeIndexRejectsInterior) {
  EXPECT_THROW((void)ArenaSpec(2, 2).outcome_index({1, 1}), arena::DomainError);
  EXPECT_THROW((void)ArenaSpec(2, 2).outcome_at(4), arena::DomainError);
}

TEST(ArenaSpec, StatesAreInRoundOrder) {
  const ArenaSpec spec(3, 2);
  const auto states = spec.states();
  EXPECT_EQ(states.size(), static_cast<std::size_t>(4 * 3 - 1));
  EXPECT_EQ(states.front(), (State{0, 0}));
  for (std::size_t k = 1; k < states.size(); ++k) {
    const int prev = states[k - 1].wins + states[k - 1].losses;
    const int cur = states[k].wins + states[k].losses;
    EXPECT_TRUE(cur > prev || (cur == prev && states[k].wins < states[k - 1].wins));
  }
}

TEST(PathCount, Examples) {
  EXPECT_EQ(arena::path_count(ArenaSpec(2, 2), {2, 0}), 1u);
  EXPECT_EQ(arena::path_count(ArenaSpec(2, 2), {2, 1}), 2u);
  EXPECT_EQ(arena::path_count(ArenaSpec(5, 1), {3, 1}), 1u);
  EXPECT_THROW((void)arena::path_count(ArenaSpec(2, 2), {1, 1}), arena::DomainError);
}

TEST(PathCount, MatchesBruteForceEnumeration) {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const ArenaSpec spec(m, n);
      for (const State t : arena::terminal_states(spec)) {
        EXPECT_EQ(arena::path_count(spec, t), oracle::count_paths(m, n, t.wins, t.losses))
            << m << "-" << n << " " << t;
      }
    }
  }
}

TEST(PathCount, UnconditionalMassSumsToOne) {
  for (int m = 1; m <= 8; ++m) {
    for (int n = 1; n <= 8; ++n) {
      const ArenaSpec spec(m, n);
      double total = 0.0;
      for (const State t : arena::terminal_states(spec)) {
        total += static_cast<double>(arena::path_count(spec, t)) *
                 std::ldexp(1.0, -(t.wins + t.losses));
      }
      EXPECT_NEAR(total, 1.0, 1e-14) << m << "-" << n;
    }
  }
}

TEST(PlayerParams, Validation) {
  EXPECT_NO_THROW(arena::PlayerParams(0.3, 0.0));
  EXPECT_THROW(arena::PlayerParams(0.3, -0.1), arena::DomainError);
  EXPECT_THROW(arena::PlayerParams(NAN, 1.0), arena::DomainError);
}

TEST(ResultCounts, AddAndCount) {
  arena::ResultCounts c(ArenaSpec(2, 2));
  EXPECT_TRUE(c.empty());
  c.add({0, 2}, 20);
  c.add({2, 1});
  EXPECT_EQ(c.count({0, 2}), 20u);
  EXPECT_EQ(c.count({2, 1}), 1u);
  EXPECT_EQ(c.count({2, 0}), 0u);
  EXPECT_EQ(c.total(), 21u);
  EXPECT_THROW(c.add({1, 1}), arena::DomainError);
}

TEST(PredictionDist, Validation) {
  const ArenaSpec spec(1, 1);
  EXPECT_NO_THROW(arena::PredictionDist(spec, {0.25, 0.75}));
  EXPECT_THROW(arena::PredictionDist(spec, {0.25, 0.7}), arena::DomainError);
  EXPECT_THROW(arena::PredictionDist(spec, {-0.25, 1.25}), arena::DomainError);
  EXPECT_THROW(arena::PredictionDist(spec, {1.0}), arena::DomainError);
  const auto d = arena::PredictionDist::normalized(spec, {1.0, 3.0});
  EXPECT_DOUBLE_EQ(d[(State{1, 0})], 0.25);
  EXPECT_DOUBLE_EQ(d.at(1), 0.75);
}

TEST(PredictionDist, EuclideanDistance) {
  const ArenaSpec spec(1, 1);
  const arena::PredictionDist a(spec, {1.0, 0.0});
  const arena::PredictionDist b(spec, {0.0, 1.0});
  EXPECT_DOUBLE_EQ(arena::euclidean_distance(a, b), std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(arena::euclidean_distance(a, a), 0.0);
}

TEST(State, Streams) {
  std::ostringstream os;
  os << State{2, 1};
  EXPECT_EQ(os.str(), "(2,1)");
}
