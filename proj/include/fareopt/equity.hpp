#pragma once

#include <span>
#include <vector>

#include "fareopt/scenario.hpp"
#include "fareopt/welfare.hpp"

namespace fareopt {

/// One spatial demand group: equal-length segment of the corridor with its
/// mean per-person user surplus and total potential demand.
struct GroupSurplus {
  int group_index = 0;
  double x_lo = 0.0;          // mile
  double x_hi = 0.0;          // mile
  double mean_surplus = 0.0;  // $/pax
  double segment_demand = 0.0;  // pax/day
};

struct LorenzPoint {
  double cum_demand_share = 0.0;
  double cum_surplus_share = 0.0;
};

/// Equity evaluation of one zone length within a benefit scan.
struct EquityReport {
  double B = 0.0;
  double F = 0.0;
  double welfare_total = 0.0;  // W_1(B) at the scanned frequency, $/day
  double gini = 0.0;
  std::vector<LorenzPoint> lorenz;
  double sw_index = 0.0;  // normalized welfare gain
  double benefit = 0.0;   // (1-mu)*SW + mu*(1-gini)
  double mu = 0.0;
  double beta_min = 0.0;
  double beta_max = 1.0;
  bool feasible = true;
};

/// Mean surplus and demand of the n equal-length groups tiling [0, A].
/// Returns an empty vector when Q_CBD == 0 (mean surplus undefined).
std::vector<GroupSurplus> group_surpluses(const CorridorScenario& sc,
                                          const StagePolicy& pol);

/// Pairwise-mean-difference inequality index over nonnegative values:
/// sum |x_i - x_j| / (2 n sum x). Requires at least one positive value.
double gini(std::span<const double> values);

/// Lorenz curve of values weighted by demand: groups sorted ascending by
/// value, cumulative demand share against cumulative surplus share.
std::vector<LorenzPoint> lorenz_curve(std::span<const double> values,
                                      std::span<const double> weights);

/// Normalization anchors for the welfare index SW(B).
struct BenefitNormalization {
  double B_star = 0.0;      // welfare-optimal zone length
  double W1_at_B_star = 0.0;  // stage-1 welfare there
  double W0 = 0.0;            // stage-0 welfare at its optimal frequency
};

/// Zone length plus the frequency to evaluate it at.
struct ZoneFrequency {
  double B = 0.0;
  double F = 0.0;
};

/// Benefit index G(B) = (1-mu) SW(B) + mu (1 - E(B)) over the given
/// (B, F) scan points; flags points violating the beta equity bounds.
std::vector<EquityReport> benefit_index(const CorridorScenario& sc,
                                        std::span<const ZoneFrequency> scan,
                                        double mu, double beta_min,
                                        double beta_max,
                                        const BenefitNormalization& norm);

}  // namespace fareopt
