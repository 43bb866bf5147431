#include "arena/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "arena/errors.hpp"
#include "arena/normal_approx.hpp"

namespace arena {

namespace {

constexpr double kCoarseStep = 0.05;
constexpr double kFineStep = 0.005;
constexpr double kEdgeEps = 1e-12;
// tan^2(pi/3) evaluates to 3 - 4e-16 in double precision.
constexpr double kBoundaryEps = 1e-12;

double objective(const MomentTable& table, const DensityGrid& prior, const ResultCounts& data,
                 double x) {
  const double base = prior.at(x);
  if (!(base > 0.0)) return -std::numeric_limits<double>::infinity();
  const PredictionDist probs = result_prob_approx(table, x);
  double value = std::log(base);
  for (std::size_t k = 0; k < probs.probs().size(); ++k) {
    const std::uint64_t n = data.counts()[k];
    if (n == 0) continue;
    value += static_cast<double>(n) * std::log(probs.probs()[k]);
  }
  return value;
}

/// lo, lo + step, ... up to hi, with hi itself always included.
std::vector<double> axis(double lo, double hi, double step) {
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  out.reserve(count + 2);
  for (std::size_t k = 0; k <= count; ++k) out.push_back(lo + step * static_cast<double>(k));
  if (hi - out.back() > kEdgeEps) out.push_back(hi);
  return out;
}

/// Points centre + k * step within one coarse cell of centre, clipped to
/// [lo, hi]; the clip edges are included when the window reaches them.
std::vector<double> window(double centre, double lo, double hi) {
  const int half = static_cast<int>(std::lround(kCoarseStep / kFineStep));
  std::vector<double> out;
  if (centre - kCoarseStep < lo - kEdgeEps) out.push_back(lo);
  for (int k = -half; k <= half; ++k) {
    const double v = centre + kFineStep * static_cast<double>(k);
    if (v < lo - kEdgeEps || v > hi + kEdgeEps) continue;
    out.push_back(std::clamp(v, lo, hi));
  }
  if (centre + kCoarseStep > hi + kEdgeEps) out.push_back(hi);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::abs(a - b) <= kEdgeEps; }),
            out.end());
  return out;
}

struct Candidate {
  double x = 0.0;
  double rho = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

/// Scans xs (outer) by rhos (inner); strict improvement keeps the
/// lexicographically smallest (x, rho) among ties.
Candidate scan(const ArenaSpec& spec, const DensityGrid& prior, const ResultCounts& data,
               const std::vector<double>& xs, const std::vector<double>& rhos) {
  std::vector<MomentTable> tables;
  tables.reserve(rhos.size());
  for (double rho : rhos) tables.push_back(build_moment_table(spec, rho));
  Candidate best;
  bool first = true;
  for (double x : xs) {
    for (std::size_t r = 0; r < rhos.size(); ++r) {
      const double v = objective(tables[r], prior, data, x);
      if (first || v > best.value) {
        best = {x, rhos[r], v};
        first = false;
      }
    }
  }
  return best;
}

}  // namespace

void SearchBox::validate() const {
  if (!(x_lo < x_hi) || x_lo < -6.0 || x_hi > 6.0) {
    throw DomainError("strength search range must satisfy -6 <= x_lo < x_hi <= 6");
  }
  if (!(rho_lo < rho_hi) || rho_lo < 0.01 || rho_hi > 10.0) {
    throw DomainError("rho search range must satisfy 0.01 <= rho_lo < rho_hi <= 10");
  }
}

double map_log_objective(const ArenaSpec& spec, const DensityGrid& prior,
                         const ResultCounts& data, double x, double rho) {
  if (!(data.spec() == spec)) throw DomainError("data recorded in a different arena");
  return objective(build_moment_table(spec, rho), prior, data, x);
}

MapEstimate map_estimate(const ArenaSpec& spec, const DensityGrid& prior,
                         const ResultCounts& data, const SearchBox& box) {
  if (spec.m() == 1 && spec.n() == 1) {
    throw NonIdentifiableError(
        "strength and rho are not jointly identifiable from 1-1 results; use estimate_rho_1v1");
  }
  if (!(data.spec() == spec)) throw DomainError("data recorded in a different arena");
  if (data.empty()) throw DomainError("map_estimate needs at least one observed result");
  box.validate();
  if (box.x_lo < prior.lo() - kEdgeEps || box.x_hi > prior.hi() + kEdgeEps) {
    throw DomainError("strength search range exceeds the prior grid");
  }

  const Candidate coarse = scan(spec, prior, data, axis(box.x_lo, box.x_hi, kCoarseStep),
                                axis(box.rho_lo, box.rho_hi, kCoarseStep));
  if (!std::isfinite(coarse.value)) {
    throw DegenerateDataError("objective is -infinity over the whole search box");
  }
  const Candidate fine = scan(spec, prior, data, window(coarse.x, box.x_lo, box.x_hi),
                              window(coarse.rho, box.rho_lo, box.rho_hi));

  MapEstimate est;
  est.x_hat = fine.x;
  est.rho_hat = fine.rho;
  est.log_objective = fine.value;
  est.at_x_bound = std::abs(fine.x - box.x_lo) <= kEdgeEps || std::abs(fine.x - box.x_hi) <= kEdgeEps;
  est.at_rho_bound =
      std::abs(fine.rho - box.rho_lo) <= kEdgeEps || std::abs(fine.rho - box.rho_hi) <= kEdgeEps;
  return est;
}

WinMatrix::WinMatrix(std::size_t players, std::size_t rounds, std::vector<std::uint8_t> indicators)
    : players_(players), rounds_(rounds), indicators_(std::move(indicators)) {
  if (players == 0) throw DomainError("win matrix needs at least one player");
  if (rounds < 2) throw DomainError("win matrix needs at least two rounds");
  if (indicators_.size() != players * rounds) {
    throw DomainError("win matrix has " + std::to_string(indicators_.size()) +
                      " entries, expected " + std::to_string(players * rounds));
  }
  row_sums_.assign(players, 0);
  double sum_sq = 0.0;
  for (std::size_t l = 0; l < players; ++l) {
    std::uint64_t y = 0;
    for (std::size_t k = 0; k < rounds; ++k) {
      const std::uint8_t v = indicators_[l * rounds + k];
      if (v > 1) throw DomainError("win indicators must be 0 or 1");
      y += v;
    }
    row_sums_[l] = y;
    sum_sq += static_cast<double>(y) * static_cast<double>(y);
  }
  const double mn = static_cast<double>(players) * static_cast<double>(rounds);
  t_stat_ = (sum_sq / mn - 0.5) / static_cast<double>(rounds - 1);
}

WinMatrix WinMatrix::from_outcomes(std::span<const RunOutcome> outcomes, std::size_t players,
                                   std::size_t runs) {
  std::vector<std::uint8_t> indicators(players * runs, 0);
  std::vector<std::uint8_t> seen(players * runs, 0);
  for (const auto& o : outcomes) {
    if (o.player_index >= players || o.run_index >= runs) {
      throw DomainError("outcome outside the declared players x runs matrix");
    }
    if (o.final != State{1, 0} && o.final != State{0, 1}) {
      throw DomainError("win matrix requires 1-1 arena outcomes");
    }
    const std::size_t at = o.player_index * runs + o.run_index;
    indicators[at] = o.final == State{1, 0} ? 1 : 0;
    seen[at] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw DomainError("outcomes do not cover every (player, run) cell");
  }
  return WinMatrix(players, runs, std::move(indicators));
}

RhoEstimate rho_from_statistic(double t_stat) {
  if (!std::isfinite(t_stat)) throw DomainError("statistic must be finite");
  // tan^2 increases on [0, 1/2); T >= 1/2 is past the no-fluctuation limit.
  if (t_stat >= 0.5) return {0.0, true};
  const double tan_sq = std::pow(std::tan(std::numbers::pi * t_stat), 2);
  if (!(tan_sq > 1.0) || t_stat < 0.0) {
    throw UnresolvedFluctuationError(
        "tan^2(pi T) <= 1: fluctuations too large to resolve (T=" + std::to_string(t_stat) +
        ")");
  }
  if (tan_sq >= 3.0 - kBoundaryEps) return {0.0, true};
  return {std::sqrt((3.0 - tan_sq) / (tan_sq - 1.0)), false};
}

RhoEstimate estimate_rho_1v1(const WinMatrix& matrix) {
  return rho_from_statistic(matrix.t_stat());
}

PredictionDist predict_map(const ArenaSpec& spec, const MapEstimate& est) {
  return result_prob_approx(build_moment_table(spec, est.rho_hat), est.x_hat);
}

PredictionDist predict_bayes(const ArenaSpec& spec, const DensityGrid& prior,
                             const ResultCounts& data, double rho_fixed) {
  if (!(data.spec() == spec)) throw DomainError("data recorded in a different arena");
  const MomentTable table = build_moment_table(spec, rho_fixed);
  const std::size_t nodes = prior.size();
  const std::size_t outcomes = spec.outcome_count();

  std::vector<std::vector<double>> probs(nodes);
  std::vector<double> log_weight(nodes, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    const double p0 = prior.values()[k];
    const PredictionDist dist = result_prob_approx(table, prior.x(k));
    probs[k].assign(dist.probs().begin(), dist.probs().end());
    if (!(p0 > 0.0)) continue;
    double lw = std::log(p0);
    for (std::size_t t = 0; t < outcomes; ++t) {
      const std::uint64_t n = data.counts()[t];
      if (n > 0) lw += static_cast<double>(n) * std::log(probs[k][t]);
    }
    log_weight[k] = lw;
    best = std::max(best, lw);
  }
  if (!std::isfinite(best)) throw DegenerateDataError("likelihood is zero everywhere on the grid");

  std::vector<double> predictive(outcomes, 0.0);
  for (std::size_t k = 0; k < nodes; ++k) {
    double w = std::exp(log_weight[k] - best) * prior.step();
    if (k == 0 || k + 1 == nodes) w *= 0.5;
    for (std::size_t t = 0; t < outcomes; ++t) predictive[t] += w * probs[k][t];
  }
  return PredictionDist::normalized(spec, std::move(predictive));
}

PredictionDist predict_frequency(const ResultCounts& data) {
  if (data.empty()) throw DomainError("frequency prediction needs at least one result");
  std::vector<double> probs(data.counts().size());
  const auto total = static_cast<double>(data.total());
  for (std::size_t k = 0; k < probs.size(); ++k) {
    probs[k] = static_cast<double>(data.counts()[k]) / total;
  }
  return PredictionDist(data.spec(), std::move(probs));
}

}  // namespace arena
