#pragma once

#include <utility>

#include "fareopt/demand_process.hpp"
#include "fareopt/welfare.hpp"

namespace fareopt {

/// Roots of (1/2) sigma^2 g(g-1) + eta g - k = 0.
struct RootPair {
  double gamma_pos = 0.0;  // > 1 when k > eta
  double gamma_neg = 0.0;  // < 0
};

/// Inputs of the switching problem: the welfare-gain perpetuity, the demand
/// process, and the two switching costs.
struct SwitchingInputs {
  GainCoefficients gain;
  GbmParams gbm;
  double activation_cost = 0.0;    // D: paid when entering fare-free at Q_upper
  double deactivation_cost = 0.0;  // K: paid when reverting at Q_lower
};

/// Hysteresis thresholds with the value-function constants that produce
/// them, plus the zero-cost threshold for reference.
struct SwitchingSolution {
  double Q_upper = 0.0;  // enter fare-free when demand reaches this level
  double Q_lower = 0.0;  // revert to fare-based below this level
  double Q_star = 0.0;   // single threshold of the zero-cost limit
  double Y0 = 0.0;       // option constant of the fare-based value
  double X1 = 0.0;       // option constant of the fare-free value
  double residual_norm = 0.0;  // scaled sup-norm of the 4x4 system residual
  RootPair roots;
};

/// Closed-form characteristic roots; requires sigma > 0 and k > 0.
RootPair characteristic_roots(const GbmParams& gbm);

/// Zero-cost switching threshold
/// Q* = gamma0 gamma1 nu1 / ((1 - gamma0)(gamma1 - 1) nu0); requires nu0 > 0
/// and nu1 < 0 so the threshold is interior.
double single_threshold(const SwitchingInputs& in);

/// Solves the value-matching / smooth-pasting system for (Y0, X1, Q_upper,
/// Q_lower) by damped Newton on log-transformed thresholds. Requires
/// positive switching costs, nu0 > 0 and k > eta.
SwitchingSolution solve_thresholds(const SwitchingInputs& in);

/// Option values (V0, V1) at demand level Q for a solved system.
std::pair<double, double> value_functions(const SwitchingSolution& sol,
                                          const SwitchingInputs& in, double Q);

/// Value-iteration benchmark on a truncated log-demand grid. The default
/// decision clock is monthly; finer steps approach the continuous-time
/// problem (discrete monitoring shifts thresholds inward by roughly
/// exp(0.5826 sigma sqrt(dt))).
struct DpGridSpec {
  int n_points = 2000;
  double span = 20.0;        // grid covers [Q*/span, span*Q*]
  double tol = 1e-6;         // sup-norm change, relative to max(1, |V|)
  int max_iterations = 200000;
  int steps_per_month = 1;
};

struct DpThresholds {
  double Q_upper = 0.0;
  double Q_lower = 0.0;
  int iterations = 0;
  // The switch-to-free region is an up-set in Q and the revert region a
  // down-set; value iteration should always produce this structure.
  bool monotone_regions = true;
};

/// Independent check of the analytic thresholds: value iteration on the
/// two-mode switching MDP with the exact one-month GBM transition kernel.
DpThresholds dp_oracle(const SwitchingInputs& in, const DpGridSpec& grid);

}  // namespace fareopt
