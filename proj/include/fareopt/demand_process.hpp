#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace fareopt {

/// Geometric Brownian motion parameters for the CBD demand density.
/// All rates are per month.
struct GbmParams {
  double eta = 0.0;    // drift
  double sigma = 0.0;  // volatility (>= 0)
  double k = 0.0;      // discount rate
  double Q0 = 0.0;     // demand density at t = 0 (pax/mile/day)
};

/// One simulated monthly demand trajectory; q has months + 1 entries
/// (q[0] == Q0) and is reproducible from (seed, path_index).
struct DemandPath {
  std::uint64_t seed = 0;
  std::uint32_t path_index = 0;
  std::vector<double> q;
};

/// Drift/volatility estimates from a monthly series with normal-theory
/// confidence intervals.
struct CalibrationResult {
  double eta = 0.0;
  double sigma = 0.0;
  double eta_lo = 0.0, eta_hi = 0.0;      // 95% CI
  double sigma_lo = 0.0, sigma_hi = 0.0;  // 95% CI
  int n_returns = 0;
};

/// Moment estimator on log returns: sigma = stdev(r), eta = mean(r) +
/// sigma^2/2 (undoes the Ito drift correction). Needs >= 13 positive
/// observations.
CalibrationResult calibrate(std::span<const double> monthly_series);

/// Exact-discretization GBM paths, one independent substream per path.
std::vector<DemandPath> simulate_paths(const GbmParams& params, int months,
                                       int n_paths, std::uint64_t seed);

/// E[Q_t] = Q0 * exp(eta * t).
double expected_demand(const GbmParams& params, double t);

}  // namespace fareopt
