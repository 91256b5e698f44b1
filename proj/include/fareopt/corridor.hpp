#pragma once

#include "fareopt/scenario.hpp"

namespace fareopt {

/// Logit split at one location, plus the cost-difference composites used by
/// the rearranged closed form.
struct ModeSplit {
  double pr_bus = 0.0;
  double pr_auto = 0.0;
  double chi_0 = 0.0;  // slope of C_a - C_b in x
  double chi_1 = 0.0;  // constant part inside the zone
  double chi_2 = 0.0;  // constant part outside the zone
};

/// Rejects a policy whose zone does not fit the corridor.
void validate_policy(const CorridorScenario& sc, const StagePolicy& pol);

/// Potential demand density at position x: Q_CBD * (1 - x/A).
double demand_density(const CorridorScenario& sc, double x);

/// Generalized bus cost: in-vehicle time, half-headway wait, fare, access.
double bus_cost(const CorridorScenario& sc, const StagePolicy& pol, double x);

/// Generalized auto cost: in-vehicle time, fixed cost, per-mile cost.
double auto_cost(const CorridorScenario& sc, double x);

double generalized_cost(const CorridorScenario& sc, const StagePolicy& pol,
                        double x, Mode mode);

/// Logit split via the rearranged cost-difference form; stable for any
/// finite costs.
ModeSplit mode_split(const CorridorScenario& sc, const StagePolicy& pol,
                     double x);

/// Unrearranged logit, exp(-psi C_b) / (exp(-psi C_a) + exp(-psi C_b)).
/// Kept as a cross-check route; can under/overflow for extreme psi*cost.
double bus_probability_direct(const CorridorScenario& sc,
                              const StagePolicy& pol, double x);

/// Potential modal demand density Q_m(x) = Q(x) * Pr_m(x).
double modal_demand(const CorridorScenario& sc, const StagePolicy& pol,
                    double x, Mode mode);

/// Realized demand density, elastic in the generalized cost:
/// q_m = Q_m * max(0, 1 - e_c * C_m).
double elastic_demand(const CorridorScenario& sc, const StagePolicy& pol,
                      double x, Mode mode);

}  // namespace fareopt
