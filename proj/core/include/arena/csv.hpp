#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arena/exact_nofluct.hpp"
#include "arena/inference.hpp"
#include "arena/normal_approx.hpp"
#include "arena/simulator.hpp"
#include "arena/worldcup.hpp"

namespace arena::csv {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

/// player_id,run,wins,losses
void write_outcomes(std::ostream& os, std::span<const RunOutcome> outcomes);

/// Reads the outcome schema back. Throws ParseError on malformed input.
std::vector<RunOutcome> read_outcomes(std::istream& in, std::string_view source = "<input>");

/// i,j,mu,sigma2
void write_moment_table(std::ostream& os, const MomentTable& table);

/// i,j,x,p,F for every `stride`-th grid node of every state.
void write_lattice(std::ostream& os, const LatticeDensities& lattice, std::size_t stride = 1);

struct EstimateRow {
  std::string entity;
  MapEstimate estimate;
};

/// entity,x_hat,rho_hat,log_objective,at_x_bound,at_rho_bound
void write_estimates(std::ostream& os, std::span<const EstimateRow> rows);

enum class Method { map, bayes, frequency, exact };
std::string_view to_string(Method method);

struct PredictionRow {
  std::string entity;
  Method method;
  PredictionDist dist;
};

/// entity,wins,losses,probability,method
void write_predictions(std::ostream& os, std::span<const PredictionRow> rows);

/// country,code,F,P1,P2 with codes listed 5 down to 0.
void write_comparison(std::ostream& os, const worldcup::ComparisonReport& report);

/// country,d_P1_F,d_P2_F
void write_distances(std::ostream& os, const worldcup::ComparisonReport& report);

/// country,code,F,P
void write_pooled(std::ostream& os, std::span<const worldcup::PooledFit> fits);

}  // namespace arena::csv
