#include "arena/exact_nofluct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "arena/errors.hpp"
#include "arena/gaussian.hpp"

namespace arena {

namespace {

constexpr double kSupportFloor = 1e-12;

void normalize_in_place(std::vector<double>& values, double step) {
  const double mass = trapezoid(values, step);
  if (!(mass > 0.0)) throw DegenerateDataError("density has zero mass on the grid");
  for (double& v : values) v /= mass;
}

}  // namespace

DensityGrid::DensityGrid(double lo, double step, std::vector<double> values)
    : lo_(lo), step_(step), values_(std::move(values)) {
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(lo)) {
    throw DomainError("density grid needs a finite origin and positive step");
  }
  if (values_.size() < 3) throw DomainError("density grid needs at least three nodes");
  for (double v : values_) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw DomainError("density samples must be finite and nonnegative");
    }
  }
  const double mass = integral();
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw DomainError("density integrates to " + std::to_string(mass) + ", not 1");
  }
}

DensityGrid DensityGrid::standard_normal(double lo, double hi, double step) {
  if (!(hi > lo) || !(step > 0.0)) throw DomainError("invalid grid bounds");
  const auto intervals = static_cast<std::size_t>(std::llround((hi - lo) / step));
  std::vector<double> values(intervals + 1);
  for (std::size_t k = 0; k <= intervals; ++k) {
    values[k] = normal_pdf(lo + step * static_cast<double>(k));
  }
  return DensityGrid(lo, step, std::move(values));
}

double DensityGrid::at(double x) const noexcept { return interpolate(values_, lo_, step_, x); }

double DensityGrid::integral() const noexcept { return trapezoid(values_, step_); }

double trapezoid(std::span<const double> values, double step) noexcept {
  if (values.size() < 2) return 0.0;
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t k = 1; k + 1 < values.size(); ++k) sum += values[k];
  return sum * step;
}

std::vector<double> cumulative_integral(std::span<const double> values, double step) {
  const std::size_t n = values.size();
  if (n < 3) throw DomainError("cumulative integral needs at least three nodes");
  std::vector<double> derivative(n);
  derivative[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * step);
  derivative[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * step);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    derivative[k] = (values[k + 1] - values[k - 1]) / (2.0 * step);
  }
  std::vector<double> out(n);
  double running = 0.0;
  const double correction = step * step / 12.0;
  for (std::size_t k = 1; k < n; ++k) {
    running += 0.5 * step * (values[k - 1] + values[k]);
    out[k] = running - correction * (derivative[k] - derivative[0]);
  }
  return out;
}

double interpolate(std::span<const double> values, double lo, double step, double x) noexcept {
  if (values.empty()) return 0.0;
  const double pos = (x - lo) / step;
  const auto last = static_cast<double>(values.size() - 1);
  if (!(pos >= 0.0) || pos > last) return 0.0;
  const auto k = std::min(static_cast<std::size_t>(pos), values.size() - 2);
  const double t = pos - static_cast<double>(k);
  return values[k] + t * (values[k + 1] - values[k]);
}

std::span<const double> LatticeDensities::density(State s) const {
  if (!spec_.contains(s)) throw DomainError("state outside the arena");
  return densities_[spec_.state_index(s)];
}

std::span<const double> LatticeDensities::cdf(State s) const {
  if (!spec_.contains(s)) throw DomainError("state outside the arena");
  return cdfs_[spec_.state_index(s)];
}

double LatticeDensities::density_at(State s, double x) const {
  return interpolate(density(s), lo_, step_, x);
}

LatticeDensities build_lattice(const ArenaSpec& spec, const DensityGrid& prior) {
  if (prior.step() > LatticeDensities::kMaxStep) {
    throw ConfigError("grid step " + std::to_string(prior.step()) + " exceeds " +
                      std::to_string(LatticeDensities::kMaxStep));
  }
  const std::size_t nodes = prior.size();
  const double h = prior.step();
  LatticeDensities lattice(spec, prior.lo(), h, nodes);

  // Normalized running integral of each state's density: the fraction of the
  // pool weaker than x.
  std::vector<std::vector<double>> below(spec.state_slots());
  auto running_fraction = [&](const std::vector<double>& density) {
    std::vector<double> cum = cumulative_integral(density, h);
    const double total = cum.back();
    for (double& c : cum) c = std::clamp(c / total, 0.0, 1.0);
    return cum;
  };

  const std::size_t origin = spec.state_index({0, 0});
  lattice.densities_[origin].assign(prior.values().begin(), prior.values().end());
  normalize_in_place(lattice.densities_[origin], h);
  below[origin] = running_fraction(lattice.densities_[origin]);
  lattice.cdfs_[origin] = below[origin];

  for (const State s : spec.states()) {
    if (s == State{0, 0}) continue;
    const int i = s.wins;
    const int j = s.losses;
    double win_weight = 0.0;
    double loss_weight = 0.0;
    if (spec.is_terminal(s)) {
      // A terminal state has exactly one non-terminal predecessor.
      (i == spec.m() ? win_weight : loss_weight) = 1.0;
    } else {
      win_weight = static_cast<double>(i) / static_cast<double>(i + j);
      loss_weight = static_cast<double>(j) / static_cast<double>(i + j);
    }

    std::vector<double> density(nodes, 0.0);
    std::vector<double> cdf(nodes, 0.0);
    if (win_weight > 0.0) {
      const std::size_t src = spec.state_index({i - 1, j});
      const auto& p = lattice.densities_[src];
      const auto& g = below[src];
      const auto& f = lattice.cdfs_[src];
      for (std::size_t k = 0; k < nodes; ++k) {
        density[k] += win_weight * 2.0 * p[k] * g[k];
        cdf[k] += win_weight * f[k] * f[k];
      }
    }
    if (loss_weight > 0.0) {
      const std::size_t src = spec.state_index({i, j - 1});
      const auto& p = lattice.densities_[src];
      const auto& g = below[src];
      const auto& f = lattice.cdfs_[src];
      for (std::size_t k = 0; k < nodes; ++k) {
        density[k] += loss_weight * 2.0 * p[k] * (1.0 - g[k]);
        const double upper = 1.0 - f[k];
        cdf[k] += loss_weight * (1.0 - upper * upper);
      }
    }
    normalize_in_place(density, h);
    const std::size_t idx = spec.state_index(s);
    if (!spec.is_terminal(s)) below[idx] = running_fraction(density);
    lattice.densities_[idx] = std::move(density);
    lattice.cdfs_[idx] = std::move(cdf);
  }
  return lattice;
}

std::vector<double> exact_result_masses(const LatticeDensities& lattice, double x) {
  const ArenaSpec& spec = lattice.spec();
  const double prior = lattice.density_at({0, 0}, x);
  if (!(prior >= kSupportFloor)) {
    throw OutOfSupportError("prior density at x=" + std::to_string(x) + " is below 1e-12");
  }
  std::vector<double> masses(spec.outcome_count());
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const State t = spec.outcome_at(k);
    const double coefficient =
        static_cast<double>(path_count(spec, t)) * std::ldexp(1.0, -(t.wins + t.losses));
    masses[k] = coefficient * lattice.density_at(t, x) / prior;
  }
  return masses;
}

PredictionDist exact_result_prob(const LatticeDensities& lattice, double x) {
  return PredictionDist::normalized(lattice.spec(), exact_result_masses(lattice, x));
}

DensityGrid posterior_no_fluct(const LatticeDensities& lattice, const ResultCounts& data) {
  const ArenaSpec& spec = lattice.spec();
  if (!(data.spec() == spec)) throw DomainError("data recorded in a different arena");

  const auto prior = lattice.density({0, 0});
  const std::size_t nodes = lattice.nodes();
  std::vector<double> log_post(nodes, -std::numeric_limits<double>::infinity());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < nodes; ++k) {
    if (!(prior[k] > 0.0)) continue;
    double ll = std::log(prior[k]);
    for (std::size_t t = 0; t < spec.outcome_count(); ++t) {
      const std::uint64_t n = data.counts()[t];
      if (n == 0) continue;
      const State s = spec.outcome_at(t);
      const double coefficient =
          static_cast<double>(path_count(spec, s)) * std::ldexp(1.0, -(s.wins + s.losses));
      const double prob = coefficient * lattice.density(s)[k] / prior[k];
      ll += static_cast<double>(n) * std::log(prob);
    }
    log_post[k] = ll;
    best = std::max(best, ll);
  }
  if (!std::isfinite(best)) {
    throw DegenerateDataError("likelihood is zero everywhere on the grid");
  }
  std::vector<double> values(nodes);
  for (std::size_t k = 0; k < nodes; ++k) values[k] = std::exp(log_post[k] - best);
  normalize_in_place(values, lattice.step());
  return DensityGrid(lattice.lo(), lattice.step(), std::move(values));
}

}  // namespace arena
