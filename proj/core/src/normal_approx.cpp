#include "arena/normal_approx.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "arena/errors.hpp"
#include "arena/gaussian.hpp"

namespace arena {

double gauss_phi_expectation(double a, double b) noexcept {
  return normal_cdf(a / std::sqrt(1.0 + b * b));
}

Moments next_moments(Moments current, double rho, Step direction) noexcept {
  const double s2 = current.variance;
  const double spread = 2.0 * s2 + rho * rho;
  const double shift = 2.0 * s2 / std::sqrt(2.0 * std::numbers::pi * spread);
  const double shrink = 1.0 - 2.0 * s2 / (std::numbers::pi * spread);
  return {direction == Step::win ? current.mean + shift : current.mean - shift, s2 * shrink};
}

Moments MomentTable::at(State s) const {
  if (!spec_.contains(s)) throw DomainError("state outside the arena");
  return moments_[spec_.state_index(s)];
}

double MomentTable::win_probability(State s, double x) const {
  const Moments mo = at(s);
  return normal_cdf((x - mo.mean) / std::sqrt(mo.variance + rho_ * rho_));
}

MomentTable build_moment_table(const ArenaSpec& spec, double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw DomainError("moment table needs a positive finite rho, got " + std::to_string(rho));
  }
  MomentTable table(spec, rho);
  auto& mo = table.moments_;
  mo[spec.state_index({0, 0})] = {0.0, 1.0};

  for (const State s : spec.states()) {
    if (s == State{0, 0}) continue;
    const int i = s.wins;
    const int j = s.losses;
    Moments result{0.0, 0.0};
    if (spec.is_terminal(s)) {
      result = i == spec.m() ? next_moments(mo[spec.state_index({i - 1, j})], rho, Step::win)
                             : next_moments(mo[spec.state_index({i, j - 1})], rho, Step::lose);
    } else {
      const double w_win = static_cast<double>(i) / static_cast<double>(i + j);
      const double w_lose = static_cast<double>(j) / static_cast<double>(i + j);
      if (i > 0) {
        const Moments up = next_moments(mo[spec.state_index({i - 1, j})], rho, Step::win);
        result.mean += w_win * up.mean;
        result.variance += w_win * up.variance;
      }
      if (j > 0) {
        const Moments down = next_moments(mo[spec.state_index({i, j - 1})], rho, Step::lose);
        result.mean += w_lose * down.mean;
        result.variance += w_lose * down.variance;
      }
    }
    mo[spec.state_index(s)] = result;
  }
  return table;
}

PredictionDist result_prob_approx(const MomentTable& table, double x) {
  const ArenaSpec& spec = table.spec();
  std::vector<double> mass(spec.state_slots(), 0.0);
  std::vector<double> out(spec.outcome_count(), 0.0);
  mass[spec.state_index({0, 0})] = 1.0;
  for (const State s : spec.states()) {
    const double here = mass[spec.state_index(s)];
    if (spec.is_terminal(s)) {
      out[spec.outcome_index(s)] = here;
      continue;
    }
    const double win = table.win_probability(s, x);
    mass[spec.state_index({s.wins + 1, s.losses})] += here * win;
    mass[spec.state_index({s.wins, s.losses + 1})] += here * (1.0 - win);
  }
  return PredictionDist(spec, std::move(out));
}

std::vector<double> density_ratio_masses(const MomentTable& table, const DensityGrid& prior,
                                         double x) {
  const ArenaSpec& spec = table.spec();
  const double base = prior.at(x);
  if (!(base >= 1e-12)) {
    throw OutOfSupportError("prior density at x=" + std::to_string(x) + " is below 1e-12");
  }
  std::vector<double> masses(spec.outcome_count());
  for (std::size_t k = 0; k < masses.size(); ++k) {
    const State t = spec.outcome_at(k);
    const Moments mo = table.at(t);
    const double coefficient =
        static_cast<double>(path_count(spec, t)) * std::ldexp(1.0, -(t.wins + t.losses));
    masses[k] = coefficient * normal_pdf(x, mo.mean, mo.variance) / base;
  }
  return masses;
}

double likelihood_density_ratio(const MomentTable& table, const DensityGrid& prior,
                                const ResultCounts& data, double x) {
  const ArenaSpec& spec = table.spec();
  if (!(data.spec() == spec)) throw DomainError("data recorded in a different arena");
  const double base = prior.at(x);
  if (!(base >= 1e-12)) {
    throw OutOfSupportError("prior density at x=" + std::to_string(x) + " is below 1e-12");
  }
  double log_value = std::log(base);
  for (std::size_t k = 0; k < spec.outcome_count(); ++k) {
    const std::uint64_t n = data.counts()[k];
    if (n == 0) continue;
    const Moments mo = table.at(spec.outcome_at(k));
    log_value += static_cast<double>(n) * (std::log(normal_pdf(x, mo.mean, mo.variance)) -
                                           std::log(base));
  }
  return std::exp(log_value);
}

}  // namespace arena
