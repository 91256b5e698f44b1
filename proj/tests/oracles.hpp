#pragma once

// Test-side reference implementations, kept independent of the library
// code paths they check.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace oracle {

/// Composite Simpson rule with n (even) intervals.
template <class F>
double simpson(F&& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

inline double norm_cdf(double z) {
  return 0.5 * std::erfc(-z * 0.70710678118654752440);
}

inline double mean(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_stdev(std::span<const double> v) {
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
template <class Cdf>
double ks_statistic(std::vector<double> sample, Cdf&& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double c = cdf(sample[i]);
    d = std::max(d, std::fabs(c - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - c));
  }
  return d;
}

/// Weighted pairwise Gini: sum_ij w_i w_j |x_i - x_j| / (2 wbar xbar_w),
/// weights need not be normalized.
inline double weighted_gini(std::span<const double> values,
                            std::span<const double> weights) {
  double wsum = 0.0, xw = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    wsum += weights[i];
    xw += weights[i] * values[i];
  }
  double num = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = 0; j < values.size(); ++j)
      num += weights[i] * weights[j] * std::fabs(values[i] - values[j]);
  return num / (2.0 * wsum * xw);
}

}  // namespace oracle
