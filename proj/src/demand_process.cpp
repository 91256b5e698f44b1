#include "fareopt/demand_process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fareopt/errors.hpp"
#include "fareopt/rng.hpp"

namespace fareopt {

namespace {

// Standard normal quantile shortcuts for 95% intervals.
constexpr double kZ975 = 1.959963984540054;

// Wilson-Hilferty approximation of the chi-square quantile, accurate to a
// few 1e-4 relative for the dof used here (>= 12).
double chi2_quantile(double p, double dof) {
  const double z = p >= 0.5 ? kZ975 : -kZ975;  // only 0.025 / 0.975 needed
  const double c = 2.0 / (9.0 * dof);
  const double t = 1.0 - c + z * std::sqrt(c);
  return dof * t * t * t;
}

// Student-t 97.5% quantile via the first Cornish-Fisher correction.
double t_quantile_975(double dof) {
  const double z = kZ975;
  return z + (z * z * z + z) / (4.0 * dof);
}

}  // namespace

CalibrationResult calibrate(std::span<const double> monthly_series) {
  if (monthly_series.size() < 13)
    throw ValidationError("calibrate: need at least 13 monthly observations");
  for (std::size_t i = 0; i < monthly_series.size(); ++i)
    if (!(monthly_series[i] > 0.0))
      throw ValidationError("calibrate: nonpositive value at index " +
                            std::to_string(i));

  const int n = static_cast<int>(monthly_series.size()) - 1;
  std::vector<double> r(n);
  for (int i = 0; i < n; ++i)
    r[i] = std::log(monthly_series[i + 1] / monthly_series[i]);

  double mean = 0.0;
  for (double v : r) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : r) ss += (v - mean) * (v - mean);
  const double var = n > 1 ? ss / (n - 1) : 0.0;
  const double sd = std::sqrt(var);

  CalibrationResult out;
  out.n_returns = n;
  out.sigma = sd;
  out.eta = mean + 0.5 * var;

  const double dof = n - 1;
  const double se = sd / std::sqrt(static_cast<double>(n));
  const double tq = t_quantile_975(dof);
  out.eta_lo = mean - tq * se + 0.5 * var;
  out.eta_hi = mean + tq * se + 0.5 * var;
  if (sd > 0.0) {
    out.sigma_lo = sd * std::sqrt(dof / chi2_quantile(0.975, dof));
    out.sigma_hi = sd * std::sqrt(dof / chi2_quantile(0.025, dof));
  }
  return out;
}

std::vector<DemandPath> simulate_paths(const GbmParams& params, int months,
                                       int n_paths, std::uint64_t seed) {
  if (months < 1) throw ValidationError("simulate_paths: months must be >= 1");
  if (n_paths < 1) throw ValidationError("simulate_paths: need >= 1 path");
  if (!(params.Q0 > 0.0)) throw ValidationError("simulate_paths: Q0 must be > 0");
  if (params.sigma < 0.0)
    throw ValidationError("simulate_paths: sigma must be >= 0");

  const double drift = params.eta - 0.5 * params.sigma * params.sigma;
  std::vector<DemandPath> paths(n_paths);
  for (int p = 0; p < n_paths; ++p) {
    DemandPath& path = paths[p];
    path.seed = seed;
    path.path_index = static_cast<std::uint32_t>(p);
    path.q.resize(months + 1);
    path.q[0] = params.Q0;
    NormalRng rng(seed, static_cast<std::uint64_t>(p));
    for (int t = 0; t < months; ++t)
      path.q[t + 1] =
          path.q[t] * std::exp(drift + params.sigma * rng.normal());
  }
  return paths;
}

double expected_demand(const GbmParams& params, double t) {
  if (t < 0.0) throw std::domain_error("expected_demand: t must be >= 0");
  return params.Q0 * std::exp(params.eta * t);
}

}  // namespace fareopt
