#include "experiments.hpp"

#include <cmath>
#include <ostream>

#include "arena/csv.hpp"
#include "arena/errors.hpp"
#include "arena/exact_nofluct.hpp"
#include "arena/rng.hpp"

namespace arena::experiments {

namespace {

SimConfig point_config(const SweepConfig& c, double x, std::uint64_t seed) {
  if (c.players < 2) throw ConfigError("need at least two players");
  SimConfig sim;
  sim.spec = c.spec;
  sim.population = c.players - 1;
  sim.runs = c.runs;
  sim.background_rho = c.rho;
  sim.tagged = PlayerParams(x, c.rho);
  sim.seed = seed;
  sim.mode = c.mode;
  return sim;
}

}  // namespace

std::size_t default_runs(double rho) { return rho >= 1.0 ? 80 : 20; }

std::vector<double> sweep_points(double from, double to, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("sweep step must be positive");
  if (!(to >= from)) throw DomainError("sweep range is empty");
  const auto count = static_cast<std::size_t>(std::floor((to - from) / step + 1e-9));
  std::vector<double> out;
  out.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    // Round to the step's decimal grid so 0.01 * 7 prints as 0.07.
    const double x = from + step * static_cast<double>(k);
    out.push_back(std::round(x * 1e9) / 1e9);
  }
  return out;
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) + index);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  if (config.reps == 0) throw ConfigError("reps must be positive");
  const auto xs = sweep_points(config.x_from, config.x_to, config.x_step);
  const DensityGrid prior = DensityGrid::standard_normal();
  std::vector<SweepRow> rows;
  rows.reserve(xs.size() * config.reps);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    for (std::size_t rep = 0; rep < config.reps; ++rep) {
      const Simulator sim(point_config(config, xs[k], point_seed(config.seed, k * config.reps + rep)));
      const ResultCounts counts = sim.tally_player(Simulator::kTaggedIndex);
      rows.push_back({xs[k], rep, map_estimate(config.spec, prior, counts, config.box)});
    }
  }
  return rows;
}

void write_sweep(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "x_true,x_hat,rho_hat\n";
  for (const auto& r : rows) {
    os << csv::format_double(r.x_true) << ',' << csv::format_double(r.estimate.x_hat) << ','
       << csv::format_double(r.estimate.rho_hat) << '\n';
  }
}

std::vector<CompareRow> run_predict_compare(const CompareConfig& config) {
  const SweepConfig& sc = config.sweep;
  if (config.oracle_runs == 0) throw ConfigError("oracle runs must be positive");
  const auto xs = sweep_points(sc.x_from, sc.x_to, sc.x_step);
  const DensityGrid prior = DensityGrid::standard_normal();
  std::vector<CompareRow> rows;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    SimConfig sim = point_config(sc, xs[k], point_seed(sc.seed, k));
    const ResultCounts train = Simulator(sim).tally_player(Simulator::kTaggedIndex);

    sim.first_run = sc.runs;
    sim.runs = config.oracle_runs;
    const ResultCounts oracle = Simulator(sim).tally_player(Simulator::kTaggedIndex);

    const MapEstimate est = map_estimate(sc.spec, prior, train, sc.box);
    const PredictionDist model = predict_map(sc.spec, est);
    const PredictionDist freq = predict_frequency(train);
    const PredictionDist truth = predict_frequency(oracle);
    for (std::size_t t = 0; t < sc.spec.outcome_count(); ++t) {
      rows.push_back({xs[k], sc.spec.outcome_at(t), model.at(t), freq.at(t), truth.at(t)});
    }
  }
  return rows;
}

void write_compare(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "x_true,wins,losses,model,frequency,oracle\n";
  for (const auto& r : rows) {
    os << csv::format_double(r.x_true) << ',' << r.outcome.wins << ',' << r.outcome.losses << ','
       << csv::format_double(r.model) << ',' << csv::format_double(r.frequency) << ','
       << csv::format_double(r.oracle) << '\n';
  }
}

}  // namespace arena::experiments
