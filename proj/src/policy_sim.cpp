#include "fareopt/policy_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fareopt/errors.hpp"

namespace fareopt {

Policy Policy::always_fare_based() {
  Policy p;
  p.kind = PolicyKind::AlwaysFareBased;
  p.initial_mode = Stage::FareBased;
  return p;
}

Policy Policy::always_fare_free() {
  Policy p;
  p.kind = PolicyKind::AlwaysFareFree;
  p.initial_mode = Stage::FareFree;
  return p;
}

Policy Policy::deterministic_break_even() {
  Policy p;
  p.kind = PolicyKind::DeterministicBreakEven;
  return p;
}

Policy Policy::single_threshold(double q_star) {
  if (!(q_star > 0.0))
    throw ValidationError("Policy: single threshold must be > 0");
  Policy p;
  p.kind = PolicyKind::SingleThreshold;
  p.q_star = q_star;
  return p;
}

Policy Policy::hysteresis(double q_upper, double q_lower) {
  if (!(q_lower > 0.0) || !(q_lower < q_upper))
    throw ValidationError("Policy: hysteresis needs 0 < Q_lower < Q_upper");
  Policy p;
  p.kind = PolicyKind::Hysteresis;
  p.q_upper = q_upper;
  p.q_lower = q_lower;
  return p;
}

std::string Policy::label() const {
  switch (kind) {
    case PolicyKind::AlwaysFareBased: return "always_fare_based";
    case PolicyKind::AlwaysFareFree: return "always_fare_free";
    case PolicyKind::DeterministicBreakEven: return "deterministic_break_even";
    case PolicyKind::SingleThreshold: return "single_threshold";
    case PolicyKind::Hysteresis: return "hysteresis";
  }
  return "unknown";
}

namespace {

Stage decide(const Policy& policy, Stage current, double q_t, int t,
             const GbmParams& gbm, double break_even) {
  switch (policy.kind) {
    case PolicyKind::AlwaysFareBased:
      return Stage::FareBased;
    case PolicyKind::AlwaysFareFree:
      return Stage::FareFree;
    case PolicyKind::DeterministicBreakEven:
      return expected_demand(gbm, t) >= break_even ? Stage::FareFree
                                                   : Stage::FareBased;
    case PolicyKind::SingleThreshold:
      return q_t >= policy.q_star ? Stage::FareFree : Stage::FareBased;
    case PolicyKind::Hysteresis:
      if (current == Stage::FareBased)
        return q_t >= policy.q_upper ? Stage::FareFree : Stage::FareBased;
      return q_t <= policy.q_lower ? Stage::FareBased : Stage::FareFree;
  }
  return current;
}

std::vector<ModePeriod> extract_periods(const std::vector<Stage>& modes) {
  std::vector<ModePeriod> periods;
  for (int t = 0; t < static_cast<int>(modes.size()); ++t) {
    if (periods.empty() || periods.back().mode != modes[t])
      periods.push_back({modes[t], t, t + 1});
    else
      periods.back().end = t + 1;
  }
  return periods;
}

}  // namespace

PathOutcome run_policy(const Policy& policy, std::span<const double> path,
                       const WelfareCoefficients& stage0,
                       const WelfareCoefficients& stage1,
                       const GbmParams& gbm, double D, double K,
                       std::vector<Stage>* mode_trace) {
  if (path.size() < 2)
    throw ValidationError("run_policy: path needs at least two months");
  const int horizon = static_cast<int>(path.size()) - 1;

  double break_even = 0.0;
  if (policy.kind == PolicyKind::DeterministicBreakEven) {
    const double dq = stage1.d_Q - stage0.d_Q;
    if (!(dq > 0.0))
      throw ValidationError(
          "deterministic policy requires a gain increasing in demand");
    break_even = -(stage1.d_C - stage0.d_C) / dq;
  }

  PathOutcome out;
  if (mode_trace) mode_trace->clear();
  Stage mode = policy.initial_mode;
  // Compensated accumulation keeps the payoff independent of month count
  // rounding quirks.
  double sum = 0.0, comp = 0.0;
  auto accrue = [&](double v) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  };

  for (int t = 0; t < horizon; ++t) {
    const double q_t = path[t];
    const double discount = std::exp(-gbm.k * t);
    const Stage next = decide(policy, mode, q_t, t, gbm, break_even);
    if (next != mode) {
      out.switch_times.push_back(t);
      accrue(-discount * (next == Stage::FareFree ? D : K));
      mode = next;
    }
    const WelfareCoefficients& c = mode == Stage::FareBased ? stage0 : stage1;
    accrue(discount * welfare_at(c, q_t));
    if (mode == Stage::FareBased)
      ++out.months_fare_based;
    else
      ++out.months_fare_free;
    if (mode_trace) mode_trace->push_back(mode);
  }
  out.payoff = sum;
  return out;
}

std::vector<PolicyOutcome> compare_policies(
    std::span<const Policy> policies, std::span<const DemandPath> paths,
    const WelfareCoefficients& stage0, const WelfareCoefficients& stage1,
    const GbmParams& gbm, double D, double K,
    std::span<const double> reference_path) {
  if (paths.empty()) throw ValidationError("compare_policies: no paths");

  std::vector<PolicyOutcome> outcomes;
  outcomes.reserve(policies.size());
  for (const Policy& policy : policies) {
    PolicyOutcome po;
    po.policy = policy;
    po.per_path.reserve(paths.size());
    double sum = 0.0, comp = 0.0;
    double switch_sum = 0.0;
    for (const DemandPath& path : paths) {
      PathOutcome r = run_policy(policy, path.q, stage0, stage1, gbm, D, K);
      const double y = r.payoff - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      switch_sum += static_cast<double>(r.switch_times.size());
      po.per_path.push_back(std::move(r));
    }
    const double n = static_cast<double>(paths.size());
    po.mean_payoff = sum / n;
    double ss = 0.0;
    for (const auto& r : po.per_path) {
      const double d = r.payoff - po.mean_payoff;
      ss += d * d;
    }
    po.stdev_payoff = paths.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    po.mean_switch_count = switch_sum / n;

    std::vector<Stage> trace;
    run_policy(policy, reference_path, stage0, stage1, gbm, D, K, &trace);
    po.reference_periods = extract_periods(trace);
    outcomes.push_back(std::move(po));
  }

  // Rank by mean payoff, highest first; ties keep the input order.
  std::vector<std::size_t> order(outcomes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return outcomes[a].mean_payoff > outcomes[b].mean_payoff;
  });
  for (std::size_t pos = 0; pos < order.size(); ++pos)
    outcomes[order[pos]].rank = static_cast<int>(pos) + 1;
  return outcomes;
}

RegimeReport regime_report(const CorridorScenario& sc, const GbmParams& gbm,
                           double D, double K, const SearchSpec& spec,
                           Regime regime, int horizon_months, int n_paths,
                           std::uint64_t seed, PeriodPath period_path) {
  RegimeReport rep;
  rep.regime = regime;

  const OptimumResult opt0 = optimize_stage0(sc, spec);
  rep.F0 = opt0.F_star;
  rep.W0 = opt0.W_star;
  if (regime == Regime::Equity) {
    // Highest equity spans the whole corridor; frequency is re-optimized
    // for that length.
    rep.B = sc.A;
    rep.F1 = optimize_frequency_for_B(sc, spec, sc.A);
  } else {
    const OptimumResult opt1 = optimize_stage1(sc, spec);
    rep.B = opt1.B_star;
    rep.F1 = opt1.F_star;
  }

  rep.coeff0 =
      welfare_coefficients(sc, StagePolicy::fare_based(rep.F0, sc.f));
  rep.coeff1 = welfare_coefficients(
      sc, StagePolicy::fare_free(rep.B, rep.F1, sc.f));
  rep.W1 = welfare_at(rep.coeff1, sc.Q_CBD);
  rep.gain = gain_coefficients(rep.coeff0, rep.coeff1, gbm.k, gbm.eta);

  SwitchingInputs inputs;
  inputs.gain = rep.gain;
  inputs.gbm = gbm;
  inputs.activation_cost = D;
  inputs.deactivation_cost = K;
  rep.switching = solve_thresholds(inputs);

  rep.paths = simulate_paths(gbm, horizon_months, n_paths, seed);
  if (period_path == PeriodPath::First) {
    rep.reference_path = rep.paths.front().q;
  } else {
    rep.reference_path.assign(horizon_months + 1, 0.0);
    for (const auto& p : rep.paths)
      for (int t = 0; t <= horizon_months; ++t)
        rep.reference_path[t] += p.q[t];
    for (double& v : rep.reference_path) v /= static_cast<double>(n_paths);
  }

  const Policy policies[] = {
      Policy::always_fare_based(), Policy::always_fare_free(),
      Policy::deterministic_break_even(),
      Policy::single_threshold(rep.switching.Q_star),
      Policy::hysteresis(rep.switching.Q_upper, rep.switching.Q_lower)};
  rep.outcomes = compare_policies(policies, rep.paths, rep.coeff0, rep.coeff1,
                                  gbm, D, K, rep.reference_path);
  return rep;
}

}  // namespace fareopt
