#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "arena/exact_nofluct.hpp"
#include "arena/inference.hpp"
#include "arena/types.hpp"

namespace arena::worldcup {

/// One team's knockout result in one tournament. Code 0 means the team did
/// not reach the last 16; codes 1..5 mean it reached the last 16, 8, 4, 2, 1.
struct TournamentRecord {
  std::string country;
  int year = 0;
  int code = 0;

  friend bool operator==(const TournamentRecord&, const TournamentRecord&) = default;
};

/// The knockout stage as an arena: five wins take the title, one loss ends it.
ArenaSpec knockout_arena();

/// Code k in [0, 4] is k wins then elimination, (k, 1); code 5 is (5, 0).
/// Throws ParseError for codes outside [0, 5].
State code_to_state(int code);
int state_to_code(State s);

/// Parses `country,year,code` CSV. An empty stream yields no records.
/// Throws ParseError (with line number) on malformed rows and
/// ValidationError on a repeated (country, year).
std::vector<TournamentRecord> parse_records(std::istream& in, std::string_view source = "<input>");

/// Throws IoError if the file cannot be opened.
std::vector<TournamentRecord> load_records(const std::filesystem::path& path);

/// Countries in order of first appearance.
std::vector<std::string> countries(const std::vector<TournamentRecord>& records);

ResultCounts counts_for(const std::vector<TournamentRecord>& records, std::string_view country);

struct CountryComparison {
  std::string country;
  MapEstimate estimate;
  PredictionDist observed;   // F: test-set frequencies
  PredictionDist model;      // P1: plug-in MAP prediction
  PredictionDist frequency;  // P2: training-set frequencies
  double d_model = 0.0;      // d(P1, F)
  double d_frequency = 0.0;  // d(P2, F)
};

struct ComparisonReport {
  std::vector<CountryComparison> countries;
};

/// Fits each country on `train`, predicts, and scores against `test`.
/// Throws ValidationError if a country appears in only one dataset.
ComparisonReport evaluate(const std::vector<TournamentRecord>& train,
                          const std::vector<TournamentRecord>& test,
                          const DensityGrid& prior = DensityGrid::standard_normal(),
                          const SearchBox& box = {});

struct PooledFit {
  std::string country;
  MapEstimate estimate;
  PredictionDist observed;  // F over all records
  PredictionDist model;     // P at the pooled estimate
};

/// Fits each country on all of its records.
std::vector<PooledFit> evaluate_pooled(const std::vector<TournamentRecord>& records,
                                       const DensityGrid& prior = DensityGrid::standard_normal(),
                                       const SearchBox& box = {});

}  // namespace arena::worldcup
