#include "arena/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "arena/errors.hpp"

namespace arena::csv {

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_outcomes(std::ostream& os, std::span<const RunOutcome> outcomes) {
  os << "player_id,run,wins,losses\n";
  for (const auto& o : outcomes) {
    os << o.player_index << ',' << o.run_index << ',' << o.final.wins << ',' << o.final.losses
       << '\n';
  }
}

std::vector<RunOutcome> read_outcomes(std::istream& in, std::string_view source) {
  std::vector<RunOutcome> out;
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  if (!std::getline(in, line)) return out;
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "player_id,run,wins,losses") fail("expected header 'player_id,run,wins,losses'");
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    long long fields[4];
    const char* p = line.data();
    const char* end = line.data() + line.size();
    for (int f = 0; f < 4; ++f) {
      const auto [next, ec] = std::from_chars(p, end, fields[f]);
      if (ec != std::errc{} || fields[f] < 0) fail("malformed field");
      p = next;
      if (f < 3) {
        if (p == end || *p != ',') fail("expected 4 comma-separated integers");
        ++p;
      }
    }
    if (p != end) fail("trailing characters");
    out.push_back({static_cast<std::size_t>(fields[0]), static_cast<std::size_t>(fields[1]),
                   State{static_cast<int>(fields[2]), static_cast<int>(fields[3])}});
  }
  return out;
}

void write_moment_table(std::ostream& os, const MomentTable& table) {
  os << "i,j,mu,sigma2\n";
  for (const State s : table.spec().states()) {
    const Moments mo = table.at(s);
    os << s.wins << ',' << s.losses << ',' << format_double(mo.mean) << ','
       << format_double(mo.variance) << '\n';
  }
}

void write_lattice(std::ostream& os, const LatticeDensities& lattice, std::size_t stride) {
  if (stride == 0) stride = 1;
  os << "i,j,x,p,F\n";
  for (const State s : lattice.spec().states()) {
    const auto p = lattice.density(s);
    const auto f = lattice.cdf(s);
    for (std::size_t k = 0; k < lattice.nodes(); k += stride) {
      os << s.wins << ',' << s.losses << ',' << format_double(lattice.x(k)) << ','
         << format_double(p[k]) << ',' << format_double(f[k]) << '\n';
    }
  }
}

void write_estimates(std::ostream& os, std::span<const EstimateRow> rows) {
  os << "entity,x_hat,rho_hat,log_objective,at_x_bound,at_rho_bound\n";
  for (const auto& r : rows) {
    os << r.entity << ',' << format_double(r.estimate.x_hat) << ','
       << format_double(r.estimate.rho_hat) << ',' << format_double(r.estimate.log_objective)
       << ',' << (r.estimate.at_x_bound ? "true" : "false") << ','
       << (r.estimate.at_rho_bound ? "true" : "false") << '\n';
  }
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::map: return "map";
    case Method::bayes: return "bayes";
    case Method::frequency: return "frequency";
    case Method::exact: return "exact";
  }
  return "unknown";
}

void write_predictions(std::ostream& os, std::span<const PredictionRow> rows) {
  os << "entity,wins,losses,probability,method\n";
  for (const auto& r : rows) {
    const ArenaSpec& spec = r.dist.spec();
    for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
      const State t = spec.outcome_at(k);
      os << r.entity << ',' << t.wins << ',' << t.losses << ',' << format_double(r.dist.at(k))
         << ',' << to_string(r.method) << '\n';
    }
  }
}

void write_comparison(std::ostream& os, const worldcup::ComparisonReport& report) {
  os << "country,code,F,P1,P2\n";
  for (const auto& c : report.countries) {
    const ArenaSpec& spec = c.model.spec();
    for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
      os << c.country << ',' << worldcup::state_to_code(spec.outcome_at(k)) << ','
         << format_double(c.observed.at(k)) << ',' << format_double(c.model.at(k)) << ','
         << format_double(c.frequency.at(k)) << '\n';
    }
  }
}

void write_distances(std::ostream& os, const worldcup::ComparisonReport& report) {
  os << "country,d_P1_F,d_P2_F\n";
  for (const auto& c : report.countries) {
    os << c.country << ',' << format_double(c.d_model) << ',' << format_double(c.d_frequency)
       << '\n';
  }
}

void write_pooled(std::ostream& os, std::span<const worldcup::PooledFit> fits) {
  os << "country,code,F,P\n";
  for (const auto& f : fits) {
    const ArenaSpec& spec = f.model.spec();
    for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
      os << f.country << ',' << worldcup::state_to_code(spec.outcome_at(k)) << ','
         << format_double(f.observed.at(k)) << ',' << format_double(f.model.at(k)) << '\n';
    }
  }
}

}  // namespace arena::csv
