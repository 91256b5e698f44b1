#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fareopt/corridor.hpp"
#include "oracles.hpp"

using namespace fareopt;

namespace {

CorridorScenario baseline() { return CorridorScenario{}; }

}  // namespace

TEST_SUITE_BEGIN("corridor");

TEST_CASE("demand density is the linear profile") {
  CorridorScenario sc = baseline();
  CHECK(demand_density(sc, 0.0) == doctest::Approx(1500.0));
  CHECK(demand_density(sc, 50.0) == doctest::Approx(0.0));
  CHECK(demand_density(sc, 25.0) == doctest::Approx(750.0));
  CHECK_THROWS_AS(demand_density(sc, -0.01), std::domain_error);
  CHECK_THROWS_AS(demand_density(sc, 50.01), std::domain_error);
}

TEST_CASE("demand density integrates to the triangle area") {
  CorridorScenario sc = baseline();
  const double area =
      oracle::simpson([&](double x) { return demand_density(sc, x); }, 0.0,
                      sc.A, 5000);
  CHECK(area == doctest::Approx(sc.Q_CBD * sc.A / 2.0).epsilon(1e-9));
}

TEST_CASE("bus cost by direct substitution") {
  CorridorScenario sc = baseline();
  // alpha_T=20, v_b=25, alpha_w=20, alpha_S=20, S=0.1, f=5
  StagePolicy p0 = StagePolicy::fare_based(10.0, 5.0);
  CHECK(bus_cost(sc, p0, 0.0) == doctest::Approx(8.0));

  StagePolicy p1 = StagePolicy::fare_free(32.0, 10.0, 5.0);
  CHECK(bus_cost(sc, p1, 10.0) == doctest::Approx(11.0));

  // fare boundary: outside fare applies from x = B on
  CHECK(bus_cost(sc, p1, 32.0) - bus_cost(sc, p1, 31.9999999) ==
        doctest::Approx(5.0).epsilon(1e-4));
}

TEST_CASE("bus cost is continuous when the fare is zero everywhere") {
  CorridorScenario sc = baseline();
  sc.f = 0.0;
  StagePolicy p1 = StagePolicy::fare_free(32.0, 10.0, 0.0);
  const double left = bus_cost(sc, p1, 32.0 - 1e-9);
  const double right = bus_cost(sc, p1, 32.0 + 1e-9);
  CHECK(left == doctest::Approx(right).epsilon(1e-9));
}

TEST_CASE("auto cost by direct substitution") {
  CorridorScenario sc = baseline();
  CHECK(auto_cost(sc, 0.0) == doctest::Approx(3.0));
  CHECK(auto_cost(sc, 30.0) == doctest::Approx(38.0));
  // affine: variable part doubles with distance
  const double fixed = auto_cost(sc, 0.0);
  CHECK(auto_cost(sc, 20.0) - fixed ==
        doctest::Approx(2.0 * (auto_cost(sc, 10.0) - fixed)).epsilon(1e-12));
}

TEST_CASE("logit split: symmetric and degenerate cases") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_based(10.0, 5.0);

  // equal costs at the location where C_a = C_b
  // solve alpha_T x/v_a + C_f_a + C_v_a x = alpha_T x/v_b + cost_const
  const double cost_const = sc.alpha_w / (2.0 * pol.F) + 5.0 + sc.alpha_S * sc.S;
  const double slope = sc.alpha_T / sc.v_a + sc.C_v_a - sc.alpha_T / sc.v_b;
  const double x_eq = (cost_const - sc.C_f_a) / slope;
  REQUIRE(x_eq > 0.0);
  REQUIRE(x_eq < sc.A);
  CHECK(mode_split(sc, pol, x_eq).pr_bus == doctest::Approx(0.5).epsilon(1e-12));

  sc.psi = 0.0;
  CHECK(mode_split(sc, pol, 7.0).pr_bus == doctest::Approx(0.5));
}

TEST_CASE("logit split: two-unit cost difference") {
  // psi = 0.5 and C_b - C_a = 2 gives Pr_b = 1/(1+e)
  CorridorScenario sc = baseline();
  sc.psi = 0.5;
  StagePolicy pol = StagePolicy::fare_based(10.0, 5.0);
  // at x = 0: C_b = 8, C_a = C_f_a; choose C_f_a = 6 so the gap is 2
  sc.C_f_a = 6.0;
  CHECK(mode_split(sc, pol, 0.0).pr_bus ==
        doctest::Approx(1.0 / (1.0 + std::exp(1.0))).epsilon(1e-12));
}

TEST_CASE("rearranged split equals the direct logit everywhere") {
  CorridorScenario sc = baseline();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(0.0, sc.A);
  std::uniform_real_distribution<double> uf(0.0, 8.0);
  std::uniform_real_distribution<double> upsi(0.0, 2.0);
  for (int i = 0; i < 200; ++i) {
    sc.psi = upsi(rng);
    StagePolicy pol = StagePolicy::fare_free(ux(rng), 1.0 + uf(rng), uf(rng));
    const double x = ux(rng);
    const ModeSplit ms = mode_split(sc, pol, x);
    CHECK(ms.pr_bus ==
          doctest::Approx(bus_probability_direct(sc, pol, x)).epsilon(1e-12));
    CHECK(ms.pr_bus + ms.pr_auto == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("stage-1 split has exactly one downward jump, at the boundary") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(32.0, 13.0, 5.0);
  const double eps = 1e-9;
  const double jump =
      mode_split(sc, pol, 32.0 - eps).pr_bus - mode_split(sc, pol, 32.0).pr_bus;
  CHECK(jump > 0.01);
  for (double x : {1.0, 10.0, 20.0, 31.0, 33.0, 45.0, 49.0}) {
    const double gap = std::fabs(mode_split(sc, pol, x + eps).pr_bus -
                                 mode_split(sc, pol, x - eps).pr_bus);
    CHECK(gap < 1e-8);
  }
}

TEST_CASE("modal and elastic demand") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_based(10.0, 5.0);

  const double x = 25.0;
  const ModeSplit ms = mode_split(sc, pol, x);
  CHECK(modal_demand(sc, pol, x, Mode::Bus) ==
        doctest::Approx(demand_density(sc, x) * ms.pr_bus));
  CHECK(modal_demand(sc, pol, x, Mode::Bus) +
            modal_demand(sc, pol, x, Mode::Auto) ==
        doctest::Approx(demand_density(sc, x)).epsilon(1e-12));
  CHECK(modal_demand(sc, pol, sc.A, Mode::Bus) == doctest::Approx(0.0));

  // clamp: at the choke cost 1/e_c = 70 no trips are generated
  CorridorScenario choke = baseline();
  choke.C_f_a = 70.0;
  CHECK(elastic_demand(choke, pol, 0.0, Mode::Auto) == doctest::Approx(0.0));

  // zero generalized cost leaves demand at its potential
  CorridorScenario freeride = baseline();
  freeride.C_f_a = 0.0;
  freeride.C_v_a = 0.0;
  freeride.alpha_T = 0.0;
  CHECK(elastic_demand(freeride, pol, 10.0, Mode::Auto) ==
        doctest::Approx(modal_demand(freeride, pol, 10.0, Mode::Auto)));

  // halfway impedance halves the demand: q = Q_m (1 - C/70), C = 35
  CorridorScenario half = baseline();
  half.C_f_a = 35.0;
  half.C_v_a = 0.0;
  const double qm = modal_demand(half, pol, 0.0, Mode::Auto);
  CHECK(elastic_demand(half, pol, 0.0, Mode::Auto) ==
        doctest::Approx(0.5 * qm).epsilon(1e-12));
}

TEST_CASE("elastic demand stays within its potential") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(20.0, 8.0, 5.0);
  for (double x = 0.0; x <= sc.A; x += 0.5) {
    for (Mode m : {Mode::Bus, Mode::Auto}) {
      const double q = elastic_demand(sc, pol, x, m);
      CHECK(q >= 0.0);
      CHECK(q <= modal_demand(sc, pol, x, m) + 1e-12);
    }
  }
}

TEST_SUITE_END();
