// Command-line front end: simulations, sweeps, estimation and the World Cup
// comparison. Every subcommand writes CSV; see README.md for the schemas.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "arena/arena.hpp"
#include "experiments.hpp"

#ifndef ARENA_DEFAULT_DATA_DIR
#define ARENA_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitValidation = 3;
constexpr int kExitIo = 4;

constexpr const char* kOutputDirEnv = "ARENA_OUTPUT_DIR";

/// Destination for one CSV: --out if given, else $ARENA_OUTPUT_DIR/<name>,
/// else stdout.
class Sink {
 public:
  Sink(const std::string& out, const std::string& default_name) {
    fs::path path;
    if (!out.empty()) {
      path = out;
    } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
      path = fs::path(dir) / default_name;
    }
    if (path.empty()) return;
    if (path.has_parent_path()) {
      std::error_code ec;
      fs::create_directories(path.parent_path(), ec);
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw arena::IoError("cannot write " + path.string());
    path_ = path;
  }

  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  bool to_stdout() const { return !file_; }
  /// Where human-readable summaries go: stderr if the CSV is on stdout.
  std::ostream& log() { return file_ ? std::cout : std::cerr; }

  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw arena::IoError("failed writing " + path_.string());
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  fs::path path_;
};

arena::PopulationMode parse_mode(const std::string& s) {
  return s == "per-run" ? arena::PopulationMode::redraw_per_run : arena::PopulationMode::fixed;
}

struct ArenaFlags {
  int m = 2;
  int n = 2;

  void add(CLI::App* cmd) {
    cmd->add_option("--m", m, "wins that end a run")->capture_default_str();
    cmd->add_option("--n", n, "losses that end a run")->capture_default_str();
  }
};

struct SweepFlags {
  ArenaFlags arena;
  double rho = 0.5;
  std::optional<std::size_t> runs;
  std::size_t players = 1024;
  double x_from = 0.0;
  double x_to = 2.0;
  double x_step = 0.01;
  std::size_t reps = 1;
  std::uint64_t seed = 1;
  std::string population = "fixed";
  std::string out;

  void add(CLI::App* cmd) {
    arena.add(cmd);
    cmd->add_option("--rho", rho, "fluctuation coefficient of every player")
        ->capture_default_str();
    cmd->add_option("--runs", runs, "runs per sweep point (default 20, or 80 when rho >= 1)");
    cmd->add_option("--players", players, "total players including the tagged one")
        ->capture_default_str();
    cmd->add_option("--x-from", x_from)->capture_default_str();
    cmd->add_option("--x-to", x_to)->capture_default_str();
    cmd->add_option("--x-step", x_step)->capture_default_str();
    cmd->add_option("--reps", reps, "replications per sweep point")->capture_default_str();
    cmd->add_option("--seed", seed)->capture_default_str();
    cmd->add_option("--population", population, "fixed | per-run")
        ->check(CLI::IsMember({"fixed", "per-run"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "output CSV path");
  }

  arena::experiments::SweepConfig config() const {
    arena::experiments::SweepConfig c;
    c.spec = arena::ArenaSpec(arena.m, arena.n);
    c.rho = rho;
    c.runs = runs.value_or(arena::experiments::default_runs(rho));
    c.players = players;
    c.x_from = x_from;
    c.x_to = x_to;
    c.x_step = x_step;
    c.reps = reps;
    c.seed = seed;
    c.mode = parse_mode(population);
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Arena model: knockout simulation, inference and prediction"};
  app.require_subcommand(1);

  // simulate
  ArenaFlags sim_arena;
  std::size_t sim_players = 1024;
  std::size_t sim_runs = 20;
  double sim_rho = 0.5;
  std::uint64_t sim_seed = 1;
  std::optional<double> tagged_x;
  std::optional<double> tagged_rho;
  std::string sim_population = "fixed";
  unsigned sim_threads = 0;
  std::string sim_out;
  auto* simulate = app.add_subcommand("simulate", "simulate an arena and export every result");
  sim_arena.add(simulate);
  simulate->add_option("--players", sim_players, "total players, tagged included")
      ->capture_default_str();
  simulate->add_option("--runs", sim_runs)->capture_default_str();
  simulate->add_option("--rho", sim_rho, "background fluctuation coefficient")
      ->capture_default_str();
  simulate->add_option("--seed", sim_seed)->capture_default_str();
  simulate->add_option("--tagged-x", tagged_x, "add a tagged player (index 0) of this strength");
  simulate->add_option("--tagged-rho", tagged_rho, "tagged player's rho (default --rho)");
  simulate->add_option("--population", sim_population, "fixed | per-run")
      ->check(CLI::IsMember({"fixed", "per-run"}))
      ->capture_default_str();
  simulate->add_option("--threads", sim_threads, "worker threads (0 = all cores)");
  simulate->add_option("--out", sim_out, "output CSV path");

  // sweep
  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "MAP estimates over a sweep of tagged strengths");
  sweep_flags.add(sweep);

  // predict-compare
  SweepFlags cmp_flags;
  std::size_t oracle_runs = 100000;
  auto* compare =
      app.add_subcommand("predict-compare", "model vs frequency predictions against long runs");
  cmp_flags.add(compare);
  compare->add_option("--oracle-runs", oracle_runs)->capture_default_str();

  // worldcup
  std::string wc_train = std::string(ARENA_DEFAULT_DATA_DIR) + "/worldcup/train.csv";
  std::string wc_test = std::string(ARENA_DEFAULT_DATA_DIR) + "/worldcup/test.csv";
  std::string wc_out_dir;
  bool wc_pooled = false;
  auto* worldcup = app.add_subcommand("worldcup", "World Cup knockout fits and comparison");
  worldcup->add_option("--train", wc_train)->capture_default_str();
  worldcup->add_option("--test", wc_test)->capture_default_str();
  worldcup->add_option("--out-dir", wc_out_dir, "directory for report CSVs");
  worldcup->add_flag("--pooled", wc_pooled, "also fit on train and test pooled");

  // moments
  ArenaFlags mom_arena;
  double mom_rho = 0.5;
  std::string mom_out;
  auto* moments = app.add_subcommand("moments", "dump the normal-approximation moment table");
  mom_arena.add(moments);
  moments->add_option("--rho", mom_rho)->capture_default_str();
  moments->add_option("--out", mom_out);

  // lattice
  ArenaFlags lat_arena;
  double lat_lo = -6.0;
  double lat_hi = 6.0;
  double lat_step = 0.01;
  std::size_t lat_stride = 1;
  std::string lat_out;
  auto* lattice = app.add_subcommand("lattice", "dump no-fluctuation densities and CDFs");
  lat_arena.add(lattice);
  lattice->add_option("--lo", lat_lo)->capture_default_str();
  lattice->add_option("--hi", lat_hi)->capture_default_str();
  lattice->add_option("--step", lat_step)->capture_default_str();
  lattice->add_option("--stride", lat_stride, "write every k-th node")->capture_default_str();
  lattice->add_option("--out", lat_out);

  // estimate
  ArenaFlags est_arena;
  std::string est_results;
  std::size_t est_player = 0;
  std::string est_entity;
  std::string est_out;
  std::string est_predictions;
  auto* estimate = app.add_subcommand("estimate", "MAP estimate from an outcome CSV");
  est_arena.add(estimate);
  estimate->add_option("--results", est_results, "outcome CSV (player_id,run,wins,losses)")
      ->required();
  estimate->add_option("--player", est_player)->capture_default_str();
  estimate->add_option("--entity", est_entity, "label for output rows (default player-<id>)");
  estimate->add_option("--out", est_out, "estimates CSV path");
  estimate->add_option("--predictions", est_predictions,
                       "also write map/bayes/frequency predictions here");

  // predict
  ArenaFlags pr_arena;
  double pr_x = 0.0;
  double pr_rho = 0.5;
  std::string pr_entity = "player";
  std::string pr_out;
  auto* predict = app.add_subcommand(
      "predict", "result probabilities at a given strength (rho = 0 uses the exact recursion)");
  pr_arena.add(predict);
  predict->add_option("--x", pr_x)->capture_default_str();
  predict->add_option("--rho", pr_rho)->capture_default_str();
  predict->add_option("--entity", pr_entity)->capture_default_str();
  predict->add_option("--out", pr_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) {
      arena::SimConfig config;
      config.spec = arena::ArenaSpec(sim_arena.m, sim_arena.n);
      config.runs = sim_runs;
      config.background_rho = sim_rho;
      config.seed = sim_seed;
      config.mode = parse_mode(sim_population);
      if (tagged_x) {
        config.tagged = arena::PlayerParams(*tagged_x, tagged_rho.value_or(sim_rho));
      }
      if (sim_players < (tagged_x ? 2u : 1u)) throw arena::ConfigError("too few players");
      config.population = sim_players - (tagged_x ? 1 : 0);
      const arena::Simulator simulator(config);
      Sink sink(sim_out, "simulate.csv");
      const auto outcomes = simulator.simulate(sim_threads);
      arena::csv::write_outcomes(sink.stream(), outcomes);
      sink.close();

      std::vector<std::uint64_t> totals(config.spec.outcome_count(), 0);
      for (const auto& o : outcomes) ++totals[config.spec.outcome_index(o.final)];
      auto& log = sink.log();
      log << "simulated " << simulator.player_count() << " players x " << sim_runs << " runs\n";
      for (std::size_t k = 0; k < totals.size(); ++k) {
        log << "  " << config.spec.outcome_at(k) << ": " << totals[k] << '\n';
      }
      if (tagged_x) {
        const auto counts = arena::tally(outcomes, config.spec, arena::Simulator::kTaggedIndex);
        log << "tagged player:";
        for (std::size_t k = 0; k < counts.counts().size(); ++k) {
          log << ' ' << config.spec.outcome_at(k) << '=' << counts.counts()[k];
        }
        log << '\n';
      }
    } else if (*sweep) {
      const auto rows = arena::experiments::run_sweep(sweep_flags.config());
      Sink sink(sweep_flags.out, "sweep.csv");
      arena::experiments::write_sweep(sink.stream(), rows);
      sink.close();
      sink.log() << "sweep: " << rows.size() << " rows\n";
    } else if (*compare) {
      arena::experiments::CompareConfig config;
      config.sweep = cmp_flags.config();
      config.oracle_runs = oracle_runs;
      const auto rows = arena::experiments::run_predict_compare(config);
      Sink sink(cmp_flags.out, "predict_compare.csv");
      arena::experiments::write_compare(sink.stream(), rows);
      sink.close();
      sink.log() << "predict-compare: " << rows.size() << " rows\n";
    } else if (*worldcup) {
      const auto train = arena::worldcup::load_records(wc_train);
      const auto test = arena::worldcup::load_records(wc_test);
      fs::path dir = wc_out_dir;
      if (dir.empty()) {
        const char* env = std::getenv(kOutputDirEnv);
        dir = (env != nullptr && *env != '\0') ? fs::path(env) : fs::path(".");
      }
      std::error_code ec;
      fs::create_directories(dir, ec);

      const auto report = arena::worldcup::evaluate(train, test);
      std::vector<arena::csv::EstimateRow> estimates;
      for (const auto& c : report.countries) estimates.push_back({c.country, c.estimate});

      auto write = [&](const std::string& name, auto&& body) {
        Sink sink((dir / name).string(), name);
        body(sink.stream());
        sink.close();
      };
      write("comparison.csv", [&](std::ostream& os) { arena::csv::write_comparison(os, report); });
      write("distances.csv", [&](std::ostream& os) { arena::csv::write_distances(os, report); });
      write("estimates.csv",
            [&](std::ostream& os) { arena::csv::write_estimates(os, estimates); });

      std::cout << "country      x_hat  rho_hat  d(P1,F)  d(P2,F)\n";
      for (const auto& c : report.countries) {
        std::printf("%-10s %7.2f %8.2f %8.2f %8.2f\n", c.country.c_str(), c.estimate.x_hat,
                    c.estimate.rho_hat, c.d_model, c.d_frequency);
      }
      if (wc_pooled) {
        auto all = train;
        all.insert(all.end(), test.begin(), test.end());
        const auto fits = arena::worldcup::evaluate_pooled(all);
        std::vector<arena::csv::EstimateRow> pooled_est;
        for (const auto& f : fits) pooled_est.push_back({f.country, f.estimate});
        write("pooled.csv", [&](std::ostream& os) { arena::csv::write_pooled(os, fits); });
        write("pooled_estimates.csv",
              [&](std::ostream& os) { arena::csv::write_estimates(os, pooled_est); });
        std::cout << "pooled:\n";
        for (const auto& f : fits) {
          std::printf("%-10s %7.2f %8.2f\n", f.country.c_str(), f.estimate.x_hat,
                      f.estimate.rho_hat);
        }
      }
      std::cout << "wrote reports to " << dir.string() << '\n';
    } else if (*moments) {
      const auto table =
          arena::build_moment_table(arena::ArenaSpec(mom_arena.m, mom_arena.n), mom_rho);
      Sink sink(mom_out, "moments.csv");
      arena::csv::write_moment_table(sink.stream(), table);
      sink.close();
    } else if (*lattice) {
      const auto prior = arena::DensityGrid::standard_normal(lat_lo, lat_hi, lat_step);
      const auto lat = arena::build_lattice(arena::ArenaSpec(lat_arena.m, lat_arena.n), prior);
      Sink sink(lat_out, "lattice.csv");
      arena::csv::write_lattice(sink.stream(), lat, lat_stride);
      sink.close();
    } else if (*estimate) {
      const arena::ArenaSpec spec(est_arena.m, est_arena.n);
      std::ifstream in(est_results);
      if (!in) throw arena::IoError("cannot open " + est_results);
      const auto outcomes = arena::csv::read_outcomes(in, est_results);
      const auto counts = arena::tally(outcomes, spec, est_player);
      const auto prior = arena::DensityGrid::standard_normal();
      const auto est = arena::map_estimate(spec, prior, counts);
      const std::string entity =
          est_entity.empty() ? "player-" + std::to_string(est_player) : est_entity;
      const std::vector<arena::csv::EstimateRow> rows{{entity, est}};
      Sink sink(est_out, "estimates.csv");
      arena::csv::write_estimates(sink.stream(), rows);
      sink.close();
      if (!est_predictions.empty()) {
        std::vector<arena::csv::PredictionRow> preds;
        preds.push_back({entity, arena::csv::Method::map, arena::predict_map(spec, est)});
        preds.push_back({entity, arena::csv::Method::bayes,
                         arena::predict_bayes(spec, prior, counts, est.rho_hat)});
        preds.push_back({entity, arena::csv::Method::frequency, arena::predict_frequency(counts)});
        Sink psink(est_predictions, "predictions.csv");
        arena::csv::write_predictions(psink.stream(), preds);
        psink.close();
      }
    } else if (*predict) {
      const arena::ArenaSpec spec(pr_arena.m, pr_arena.n);
      std::vector<arena::csv::PredictionRow> rows;
      if (pr_rho == 0.0) {
        const auto lat = arena::build_lattice(spec, arena::DensityGrid::standard_normal());
        rows.push_back({pr_entity, arena::csv::Method::exact, arena::exact_result_prob(lat, pr_x)});
      } else {
        const auto table = arena::build_moment_table(spec, pr_rho);
        rows.push_back({pr_entity, arena::csv::Method::map, arena::result_prob_approx(table, pr_x)});
      }
      Sink sink(pr_out, "predictions.csv");
      arena::csv::write_predictions(sink.stream(), rows);
      sink.close();
    }
  } catch (const arena::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const arena::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitOk;
}
