#include "arena/worldcup.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <utility>

#include "arena/errors.hpp"

namespace arena::worldcup {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

int parse_int(std::string_view field, std::string_view what, std::string_view source,
              std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": invalid " +
                     std::string(what) + " '" + std::string(field) + "'");
  }
  return value;
}

PredictionDist frequencies(const ResultCounts& counts) { return predict_frequency(counts); }

}  // namespace

ArenaSpec knockout_arena() { return ArenaSpec(5, 1); }

State code_to_state(int code) {
  if (code < 0 || code > 5) {
    throw ParseError("result code " + std::to_string(code) + " outside [0, 5]");
  }
  return code == 5 ? State{5, 0} : State{code, 1};
}

int state_to_code(State s) {
  if (!knockout_arena().is_terminal(s)) throw DomainError("not a knockout result");
  return s.wins;
}

std::vector<TournamentRecord> parse_records(std::istream& in, std::string_view source) {
  std::vector<TournamentRecord> records;
  std::set<std::pair<std::string, int>> keys;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    if (!header_seen) {
      if (view != "country,year,code") {
        throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                         ": expected header 'country,year,code'");
      }
      header_seen = true;
      continue;
    }
    const auto fields = split(view);
    if (fields.size() != 3 || fields[0].empty()) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) +
                       ": expected 3 fields country,year,code");
    }
    TournamentRecord rec;
    rec.country = std::string(fields[0]);
    rec.year = parse_int(fields[1], "year", source, line_no);
    rec.code = parse_int(fields[2], "code", source, line_no);
    if (rec.code < 0 || rec.code > 5) {
      throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": result code " +
                       std::to_string(rec.code) + " outside [0, 5]");
    }
    if (!keys.emplace(rec.country, rec.year).second) {
      throw ValidationError(std::string(source) + ":" + std::to_string(line_no) +
                            ": duplicate record for " + rec.country + " " +
                            std::to_string(rec.year));
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<TournamentRecord> load_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return parse_records(in, path.string());
}

std::vector<std::string> countries(const std::vector<TournamentRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) {
    if (std::find(out.begin(), out.end(), r.country) == out.end()) out.push_back(r.country);
  }
  return out;
}

ResultCounts counts_for(const std::vector<TournamentRecord>& records, std::string_view country) {
  ResultCounts counts(knockout_arena());
  for (const auto& r : records) {
    if (r.country == country) counts.add(code_to_state(r.code));
  }
  return counts;
}

ComparisonReport evaluate(const std::vector<TournamentRecord>& train,
                          const std::vector<TournamentRecord>& test, const DensityGrid& prior,
                          const SearchBox& box) {
  const auto train_countries = countries(train);
  const auto test_countries = countries(test);
  for (const auto& c : test_countries) {
    if (std::find(train_countries.begin(), train_countries.end(), c) == train_countries.end()) {
      throw ValidationError("country '" + c + "' appears only in the test data");
    }
  }
  const ArenaSpec spec = knockout_arena();
  ComparisonReport report;
  for (const auto& c : train_countries) {
    if (std::find(test_countries.begin(), test_countries.end(), c) == test_countries.end()) {
      throw ValidationError("country '" + c + "' appears only in the training data");
    }
    const ResultCounts train_counts = counts_for(train, c);
    const ResultCounts test_counts = counts_for(test, c);
    const MapEstimate est = map_estimate(spec, prior, train_counts, box);
    PredictionDist observed = frequencies(test_counts);
    PredictionDist model = predict_map(spec, est);
    PredictionDist freq = frequencies(train_counts);
    const double d_model = euclidean_distance(model, observed);
    const double d_freq = euclidean_distance(freq, observed);
    report.countries.push_back(CountryComparison{c, est, std::move(observed), std::move(model),
                                                 std::move(freq), d_model, d_freq});
  }
  return report;
}

std::vector<PooledFit> evaluate_pooled(const std::vector<TournamentRecord>& records,
                                       const DensityGrid& prior, const SearchBox& box) {
  const ArenaSpec spec = knockout_arena();
  std::vector<PooledFit> out;
  for (const auto& c : countries(records)) {
    const ResultCounts counts = counts_for(records, c);
    const MapEstimate est = map_estimate(spec, prior, counts, box);
    out.push_back(PooledFit{c, est, frequencies(counts), predict_map(spec, est)});
  }
  return out;
}

}  // namespace arena::worldcup
