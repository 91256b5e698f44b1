#pragma once

#include "fareopt/corridor.hpp"
#include "fareopt/scenario.hpp"

namespace fareopt {

/// Daily welfare of one operating stage, component by component.
/// total = user_surplus + revenue - operating - collection - admin.
struct WelfareBreakdown {
  Stage stage = Stage::FareBased;
  double user_surplus = 0.0;    // $/day
  double revenue = 0.0;         // $/day
  double operating_cost = 0.0;  // $/day
  double collection_cost = 0.0; // $/day
  double admin_cost = 0.0;      // $/day (zero at stage 0)
  double fleet_size = 0.0;      // vehicles (real-valued)
  double total = 0.0;           // $/day
};

/// Affine welfare representation for a frozen (B, F):
/// W(Q) = d_Q * Q + d_C where Q is the CBD demand density.
struct WelfareCoefficients {
  Stage stage = Stage::FareBased;
  double d_Q = 0.0;  // $/day per pax/mile/day
  double d_C = 0.0;  // $/day
};

/// Welfare-gain flow between the two stages and its perpetuity values.
/// Omega(Q) = delta_Q * Q + delta_C; nu_0 = delta_Q/(k - eta), nu_1 = delta_C/k.
struct GainCoefficients {
  double delta_Q = 0.0;
  double delta_C = 0.0;
  double nu_0 = 0.0;
  double nu_1 = 0.0;
};

/// User surplus density at x for one mode ($/mile/day). Zero once the
/// generalized cost reaches the choke level 1/e_c.
double surplus_density(const CorridorScenario& sc, const StagePolicy& pol,
                       double x, Mode mode);

/// g_f + g_v * N with fleet N = 2 A F / v_b.
double operating_cost(const CorridorScenario& sc, const StagePolicy& pol);

double fleet_size(const CorridorScenario& sc, const StagePolicy& pol);

/// Fare-collection cost over the charged span (whole corridor at stage 0,
/// [B, A] at stage 1), including the per-trip component on realized riders.
double collection_cost(const CorridorScenario& sc, const StagePolicy& pol);

/// iota_f + iota_v * B^theta at stage 1; zero at stage 0.
double admin_cost(const CorridorScenario& sc, const StagePolicy& pol);

/// Full welfare assembly for one stage at the scenario's Q_CBD.
WelfareBreakdown stage_welfare(const CorridorScenario& sc,
                               const StagePolicy& pol);

/// Coefficients of the affine form W(Q) = d_Q * Q + d_C for the given
/// frozen policy; d_Q comes from the unit-density spatial integral.
WelfareCoefficients welfare_coefficients(const CorridorScenario& sc,
                                         const StagePolicy& pol);

inline double welfare_at(const WelfareCoefficients& c, double Q) {
  return c.d_Q * Q + c.d_C;
}

/// Instantaneous welfare improvement of stage 1 over stage 0 at density Q.
double welfare_gain(const WelfareCoefficients& stage0,
                    const WelfareCoefficients& stage1, double Q);

/// Perpetuity coefficients of the gain flow; requires k > eta.
GainCoefficients gain_coefficients(const WelfareCoefficients& stage0,
                                   const WelfareCoefficients& stage1, double k,
                                   double eta);

}  // namespace fareopt
