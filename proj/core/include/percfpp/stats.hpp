#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace percfpp {

// Point estimate with a 95% confidence half-width.
struct Estimate {
  double value = 0.0;
  double ci = 0.0;

  double lo() const noexcept { return value - ci; }
  double hi() const noexcept { return value + ci; }
};

inline constexpr double kZ95 = 1.959963984540054;

// Binomial proportion with normal-approximation half-width.
inline Estimate proportion(std::size_t hits, std::size_t trials) {
  if (trials == 0) return {};
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  return {p, kZ95 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials))};
}

// Sample mean with normal-approximation half-width of the mean.
inline Estimate mean_estimate(std::span<const double> xs) {
  if (xs.empty()) return {};
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = ss / static_cast<double>(xs.size() - 1);
  return {mean, kZ95 * std::sqrt(var / static_cast<double>(xs.size()))};
}

// |a - b| within the sum of the half-widths.
inline bool agree_within_ci(const Estimate& a, const Estimate& b) noexcept {
  return std::abs(a.value - b.value) <= a.ci + b.ci;
}

}  // namespace percfpp
