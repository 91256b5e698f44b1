#include "fareopt/welfare.hpp"

#include <cmath>
#include <sstream>

#include "fareopt/errors.hpp"
#include "fareopt/quadrature.hpp"

namespace fareopt {

namespace {

constexpr double kQuadTol = 1e-8;  // $/day, per assembled integral

// Surplus per unit of potential modal demand at generalized cost C:
// integral of (1 - e_c c) from C up to the choke cost 1/e_c.
double surplus_factor(double e_c, double cost) {
  if (cost >= 1.0 / e_c) return 0.0;
  return 0.5 / e_c - cost + 0.5 * e_c * cost * cost;
}

double clamped_impedance(double e_c, double cost) {
  const double v = 1.0 - e_c * cost;
  return v > 0.0 ? v : 0.0;
}

double checked_integral(quad::Result r, const char* what, double a, double b) {
  if (!r.converged) {
    std::ostringstream os;
    os << "quadrature did not converge for " << what << " over [" << a << ", "
       << b << "]; estimated error " << r.error << " after " << r.panels
       << " panels";
    throw SolverError(os.str());
  }
  return r.value;
}

// Realized bus ridership over the charged span (pax/day).
double charged_ridership(const CorridorScenario& sc, const StagePolicy& pol) {
  const double lo = pol.stage == Stage::FareFree ? pol.B : 0.0;
  if (lo >= sc.A) return 0.0;
  auto rider = [&](double x) { return elastic_demand(sc, pol, x, Mode::Bus); };
  return checked_integral(quad::integrate(rider, lo, sc.A, kQuadTol),
                          "charged ridership", lo, sc.A);
}

}  // namespace

double surplus_density(const CorridorScenario& sc, const StagePolicy& pol,
                       double x, Mode mode) {
  return modal_demand(sc, pol, x, mode) *
         surplus_factor(sc.e_c, generalized_cost(sc, pol, x, mode));
}

double fleet_size(const CorridorScenario& sc, const StagePolicy& pol) {
  return 2.0 * sc.A * pol.F / sc.v_b;
}

double operating_cost(const CorridorScenario& sc, const StagePolicy& pol) {
  return sc.g_f + sc.g_v * fleet_size(sc, pol);
}

double collection_cost(const CorridorScenario& sc, const StagePolicy& pol) {
  validate_policy(sc, pol);
  const double charged_length =
      pol.stage == Stage::FareFree ? sc.A - pol.B : sc.A;
  return sc.e_0 + sc.e_1 * charged_length +
         sc.e_2 * charged_ridership(sc, pol);
}

double admin_cost(const CorridorScenario& sc, const StagePolicy& pol) {
  if (pol.stage == Stage::FareBased) return 0.0;
  return sc.iota_f + sc.iota_v * std::pow(pol.B, sc.theta);
}

WelfareBreakdown stage_welfare(const CorridorScenario& sc,
                               const StagePolicy& pol) {
  validate_policy(sc, pol);
  WelfareBreakdown w;
  w.stage = pol.stage;

  auto surplus_both = [&](double x) {
    return surplus_density(sc, pol, x, Mode::Bus) +
           surplus_density(sc, pol, x, Mode::Auto);
  };
  const double breaks[] = {pol.B};
  w.user_surplus = checked_integral(
      quad::integrate_split(surplus_both, 0.0, sc.A, breaks, kQuadTol),
      "user surplus", 0.0, sc.A);

  const double riders = charged_ridership(sc, pol);
  w.revenue = pol.fare_outside * riders;
  const double charged_length =
      pol.stage == Stage::FareFree ? sc.A - pol.B : sc.A;
  w.collection_cost = sc.e_0 + sc.e_1 * charged_length + sc.e_2 * riders;

  w.fleet_size = fleet_size(sc, pol);
  w.operating_cost = operating_cost(sc, pol);
  w.admin_cost =
      (pol.stage == Stage::FareFree && sc.stage1_admin_term)
          ? admin_cost(sc, pol)
          : 0.0;

  w.total = w.user_surplus + w.revenue - w.operating_cost -
            w.collection_cost - w.admin_cost;
  return w;
}

WelfareCoefficients welfare_coefficients(const CorridorScenario& sc,
                                         const StagePolicy& pol) {
  validate_policy(sc, pol);
  WelfareCoefficients c;
  c.stage = pol.stage;

  const double charge_from = pol.stage == Stage::FareFree ? pol.B : 0.0;
  // Per-unit-density integrand: surplus of both modes plus the net fare
  // margin (f - e_2) on realized bus riders over the charged span.
  auto unit = [&](double x) {
    const ModeSplit ms = mode_split(sc, pol, x);
    const double shape = 1.0 - x / sc.A;
    const double cb = bus_cost(sc, pol, x);
    const double ca = auto_cost(sc, x);
    double g = ms.pr_auto * surplus_factor(sc.e_c, ca) +
               ms.pr_bus * surplus_factor(sc.e_c, cb);
    if (x >= charge_from)
      g += ms.pr_bus * clamped_impedance(sc.e_c, cb) * (pol.fare_outside - sc.e_2);
    return shape * g;
  };
  const double breaks[] = {pol.B, charge_from};
  c.d_Q = checked_integral(
      quad::integrate_split(unit, 0.0, sc.A, breaks, kQuadTol),
      "welfare density coefficient", 0.0, sc.A);

  const double charged_length = sc.A - charge_from;
  c.d_C = -sc.g_f - sc.g_v * fleet_size(sc, pol) - sc.e_0 -
          sc.e_1 * charged_length;
  if (pol.stage == Stage::FareFree && sc.stage1_admin_term)
    c.d_C -= admin_cost(sc, pol);
  return c;
}

double welfare_gain(const WelfareCoefficients& stage0,
                    const WelfareCoefficients& stage1, double Q) {
  return (stage1.d_Q - stage0.d_Q) * Q + (stage1.d_C - stage0.d_C);
}

GainCoefficients gain_coefficients(const WelfareCoefficients& stage0,
                                   const WelfareCoefficients& stage1, double k,
                                   double eta) {
  if (!(k > eta))
    throw SolverError(
        "gain_coefficients: requires k > eta (perpetuity diverges)");
  if (!(k > 0.0)) throw SolverError("gain_coefficients: requires k > 0");
  GainCoefficients g;
  g.delta_Q = stage1.d_Q - stage0.d_Q;
  g.delta_C = stage1.d_C - stage0.d_C;
  g.nu_0 = g.delta_Q / (k - eta);
  g.nu_1 = g.delta_C / k;
  return g;
}

}  // namespace fareopt
