#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fareopt/demand_process.hpp"
#include "fareopt/real_options.hpp"
#include "fareopt/static_optimizer.hpp"
#include "fareopt/welfare.hpp"

namespace fareopt {

enum class PolicyKind {
  AlwaysFareBased,
  AlwaysFareFree,
  DeterministicBreakEven,  // mode from the expected path vs break-even
  SingleThreshold,         // fare-free iff q_t >= Q*
  Hysteresis,              // enter at Q_upper, exit at Q_lower
};

/// A switching rule applied month by month to a demand path.
struct Policy {
  PolicyKind kind = PolicyKind::AlwaysFareBased;
  double q_upper = 0.0;
  double q_lower = 0.0;
  double q_star = 0.0;
  Stage initial_mode = Stage::FareBased;

  static Policy always_fare_based();
  static Policy always_fare_free();
  static Policy deterministic_break_even();
  static Policy single_threshold(double q_star);
  static Policy hysteresis(double q_upper, double q_lower);

  std::string label() const;
};

/// Outcome of one policy on one path.
struct PathOutcome {
  double payoff = 0.0;  // discounted flows minus discounted switching costs
  std::vector<int> switch_times;  // month indices, strictly increasing
  int months_fare_based = 0;
  int months_fare_free = 0;
};

/// Contiguous run of months in one mode, [start, end).
struct ModePeriod {
  Stage mode = Stage::FareBased;
  int start = 0;
  int end = 0;
};

/// Aggregate outcome of one policy over a path set.
struct PolicyOutcome {
  Policy policy;
  std::vector<PathOutcome> per_path;
  double mean_payoff = 0.0;
  double stdev_payoff = 0.0;
  double mean_switch_count = 0.0;
  // Timeline on the reference path (mean-of-paths or first path).
  std::vector<ModePeriod> reference_periods;
  int rank = 0;  // 1 = highest mean payoff
};

/// Applies the policy to one path: the switch rule is evaluated on q_t
/// before the month's flow accrues; flows are the affine stage welfare
/// discounted at e^{-k t}; switches cost D (activation) or K
/// (deactivation), also discounted. Flows accrue for months 0..T-1.
PathOutcome run_policy(const Policy& policy, std::span<const double> path,
                       const WelfareCoefficients& stage0,
                       const WelfareCoefficients& stage1,
                       const GbmParams& gbm, double D, double K,
                       std::vector<Stage>* mode_trace = nullptr);

/// Evaluates each policy on every path with shared coefficients; ranks by
/// mean payoff and extracts the period timeline on the reference path.
std::vector<PolicyOutcome> compare_policies(
    std::span<const Policy> policies, std::span<const DemandPath> paths,
    const WelfareCoefficients& stage0, const WelfareCoefficients& stage1,
    const GbmParams& gbm, double D, double K,
    std::span<const double> reference_path);

enum class Regime { Welfare, Equity };

/// Path used for the period timeline.
enum class PeriodPath { Mean, First };

/// End-to-end dynamic analysis of one regime: static optimization of both
/// stages (the equity regime pins B = A), welfare coefficients, switching
/// thresholds and the five-policy comparison on simulated paths.
struct RegimeReport {
  Regime regime = Regime::Welfare;
  double B = 0.0;
  double F0 = 0.0;
  double F1 = 0.0;
  double W0 = 0.0;  // stage-0 welfare at the scenario Q_CBD
  double W1 = 0.0;
  WelfareCoefficients coeff0, coeff1;
  GainCoefficients gain;
  SwitchingSolution switching;
  std::vector<DemandPath> paths;
  std::vector<double> reference_path;
  std::vector<PolicyOutcome> outcomes;
};

RegimeReport regime_report(const CorridorScenario& sc, const GbmParams& gbm,
                           double D, double K, const SearchSpec& spec,
                           Regime regime, int horizon_months, int n_paths,
                           std::uint64_t seed,
                           PeriodPath period_path = PeriodPath::Mean);

}  // namespace fareopt
