#pragma once

#include <cmath>
#include <numbers>

namespace arena {

inline double normal_pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

/// Standard normal CDF via erfc, accurate in both tails.
inline double normal_cdf(double z) noexcept {
  return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

inline double normal_pdf(double x, double mean, double variance) noexcept {
  const double z = (x - mean) / std::sqrt(variance);
  return normal_pdf(z) / std::sqrt(variance);
}

}  // namespace arena
