#include "fareopt/corridor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fareopt/errors.hpp"

namespace fareopt {

namespace {

void check_position(const CorridorScenario& sc, double x) {
  if (!(x >= 0.0 && x <= sc.A))
    throw std::domain_error("position x = " + std::to_string(x) +
                            " outside corridor [0, " + std::to_string(sc.A) +
                            "]");
}

}  // namespace

void validate_policy(const CorridorScenario& sc, const StagePolicy& pol) {
  if (!(pol.B >= 0.0 && pol.B <= sc.A))
    throw ValidationError("policy zone length " + std::to_string(pol.B) +
                          " outside [0, " + std::to_string(sc.A) + "]");
  if (!(pol.F > 0.0))
    throw ValidationError("policy frequency must be > 0");
}

double demand_density(const CorridorScenario& sc, double x) {
  check_position(sc, x);
  return sc.Q_CBD * (1.0 - x / sc.A);
}

double bus_cost(const CorridorScenario& sc, const StagePolicy& pol, double x) {
  check_position(sc, x);
  if (pol.F <= 0.0) throw std::domain_error("bus_cost: frequency must be > 0");
  return sc.alpha_T * x / sc.v_b + sc.alpha_w / (2.0 * pol.F) + pol.fare_at(x) +
         sc.alpha_S * sc.S;
}

double auto_cost(const CorridorScenario& sc, double x) {
  check_position(sc, x);
  return sc.alpha_T * x / sc.v_a + sc.C_f_a + sc.C_v_a * x;
}

double generalized_cost(const CorridorScenario& sc, const StagePolicy& pol,
                        double x, Mode mode) {
  return mode == Mode::Bus ? bus_cost(sc, pol, x) : auto_cost(sc, x);
}

ModeSplit mode_split(const CorridorScenario& sc, const StagePolicy& pol,
                     double x) {
  check_position(sc, x);
  ModeSplit ms;
  // C_a(x) - C_b(x) = chi_0 * x + chi_{1,2}; logistic of the difference.
  ms.chi_0 = sc.alpha_T * (1.0 / sc.v_a - 1.0 / sc.v_b) + sc.C_v_a;
  const double base = sc.C_f_a - sc.alpha_w / (2.0 * pol.F) - sc.alpha_S * sc.S;
  ms.chi_1 = base - pol.fare_inside;
  ms.chi_2 = base - pol.fare_outside;
  const double diff = ms.chi_0 * x + (x < pol.B ? ms.chi_1 : ms.chi_2);
  ms.pr_bus = 1.0 / (1.0 + std::exp(-sc.psi * diff));
  ms.pr_auto = 1.0 - ms.pr_bus;
  return ms;
}

double bus_probability_direct(const CorridorScenario& sc,
                              const StagePolicy& pol, double x) {
  const double eb = std::exp(-sc.psi * bus_cost(sc, pol, x));
  const double ea = std::exp(-sc.psi * auto_cost(sc, x));
  return eb / (ea + eb);
}

double modal_demand(const CorridorScenario& sc, const StagePolicy& pol,
                    double x, Mode mode) {
  const ModeSplit ms = mode_split(sc, pol, x);
  return demand_density(sc, x) * (mode == Mode::Bus ? ms.pr_bus : ms.pr_auto);
}

double elastic_demand(const CorridorScenario& sc, const StagePolicy& pol,
                      double x, Mode mode) {
  const double impedance = 1.0 - sc.e_c * generalized_cost(sc, pol, x, mode);
  if (impedance <= 0.0) return 0.0;
  return modal_demand(sc, pol, x, mode) * impedance;
}

}  // namespace fareopt
