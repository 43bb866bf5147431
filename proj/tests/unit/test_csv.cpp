#include <gtest/gtest.h>

#include <sstream>

#include "arena/csv.hpp"
#include "arena/errors.hpp"
#include "arena/exact_nofluct.hpp"
#include "arena/normal_approx.hpp"
#include "arena/simulator.hpp"

using arena::ArenaSpec;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Csv, FormatDoubleRoundTrips) {
  EXPECT_EQ(arena::csv::format_double(0.1), "0.1");
  EXPECT_EQ(arena::csv::format_double(2.0), "2");
  EXPECT_EQ(arena::csv::format_double(-1.25), "-1.25");
  const double v = 0.1 + 0.2;
  EXPECT_EQ(std::stod(arena::csv::format_double(v)), v);
}

TEST(Csv, OutcomesRoundTrip) {
  arena::SimConfig c;
  c.spec = ArenaSpec(2, 2);
  c.population = 16;
  c.runs = 3;
  c.background_rho = 0.4;
  c.seed = 6;
  const auto outcomes = arena::simulate(c);
  std::ostringstream os;
  arena::csv::write_outcomes(os, outcomes);
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 1u + 48u);
  EXPECT_EQ(rows[0], "player_id,run,wins,losses");
  std::istringstream in(os.str());
  EXPECT_EQ(arena::csv::read_outcomes(in), outcomes);
}

TEST(Csv, ReadOutcomesErrors) {
  std::istringstream bad_header("player,run,wins,losses\n");
  EXPECT_THROW((void)arena::csv::read_outcomes(bad_header), arena::ParseError);
  std::istringstream bad_row("player_id,run,wins,losses\n0,0,2\n");
  EXPECT_THROW((void)arena::csv::read_outcomes(bad_row), arena::ParseError);
  std::istringstream bad_num("player_id,run,wins,losses\n0,0,x,1\n");
  EXPECT_THROW((void)arena::csv::read_outcomes(bad_num), arena::ParseError);
}

TEST(Csv, MomentTable) {
  const auto t = arena::build_moment_table(ArenaSpec(2, 2), 0.5);
  std::ostringstream os;
  arena::csv::write_moment_table(os, t);
  const auto rows = lines(os.str());
  ASSERT_EQ(rows.size(), 1u + 8u);
  EXPECT_EQ(rows[0], "i,j,mu,sigma2");
  EXPECT_EQ(rows[1], "0,0,0,1");
}

TEST(Csv, LatticeStride) {
  const auto lat = arena::build_lattice(ArenaSpec(1, 1), arena::DensityGrid::standard_normal());
  std::ostringstream os;
  arena::csv::write_lattice(os, lat, 100);
  const auto rows = lines(os.str());
  EXPECT_EQ(rows[0], "i,j,x,p,F");
  // Three states, nodes 0, 100, ..., 1200.
  EXPECT_EQ(rows.size(), 1u + 3u * 13u);
}

TEST(Csv, EstimatesAndPredictions) {
  arena::MapEstimate est{1.5, 0.25, -3.5, false, true};
  const std::vector<arena::csv::EstimateRow> rows{{"p", est}};
  std::ostringstream os;
  arena::csv::write_estimates(os, rows);
  EXPECT_EQ(os.str(),
            "entity,x_hat,rho_hat,log_objective,at_x_bound,at_rho_bound\np,1.5,0.25,-3.5,false,true\n");

  const ArenaSpec spec(1, 1);
  const std::vector<arena::csv::PredictionRow> preds{
      {"p", arena::csv::Method::bayes, arena::PredictionDist(spec, {0.75, 0.25})}};
  std::ostringstream ps;
  arena::csv::write_predictions(ps, preds);
  EXPECT_EQ(ps.str(), "entity,wins,losses,probability,method\np,1,0,0.75,bayes\np,0,1,0.25,bayes\n");
  EXPECT_EQ(arena::csv::to_string(arena::csv::Method::exact), "exact");
}
