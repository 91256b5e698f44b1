#include <cmath>
#include <random>

#include "doctest.h"
#include "fareopt/errors.hpp"
#include "fareopt/welfare.hpp"
#include "oracles.hpp"

using namespace fareopt;

namespace {

CorridorScenario baseline() { return CorridorScenario{}; }

double surplus_closed(double e_c, double q_potential, double cost) {
  if (cost >= 1.0 / e_c) return 0.0;
  return q_potential * (0.5 / e_c - cost + 0.5 * e_c * cost * cost);
}

}  // namespace

TEST_SUITE_BEGIN("welfare");

TEST_CASE("surplus identity: both printed forms agree exactly") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uc(0.0, 120.0);
  std::uniform_real_distribution<double> uq(0.0, 2000.0);
  std::uniform_real_distribution<double> ue(0.005, 0.05);
  for (int i = 0; i < 500; ++i) {
    const double e_c = ue(rng), q = uq(rng), c = uc(rng);
    const double lhs = surplus_closed(e_c, q, c);
    const double rhs =
        c >= 1.0 / e_c ? 0.0 : 0.5 * e_c * q * (1.0 / e_c - c) * (1.0 / e_c - c);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("surplus equals the demand integral over cost") {
  // integrate q(c) = q_pot (1 - e_c c) from the current cost to the choke
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uc(0.0, 65.0);
  for (int i = 0; i < 20; ++i) {
    const double e_c = 1.0 / 70.0, q = 400.0, c0 = uc(rng);
    const double numeric = oracle::simpson(
        [&](double c) { return q * (1.0 - e_c * c); }, c0, 1.0 / e_c, 4000);
    CHECK(surplus_closed(e_c, q, c0) ==
          doctest::Approx(numeric).epsilon(1e-6));
  }
}

TEST_CASE("surplus density: boundary values") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_based(10.0, 5.0);

  // zero-cost mode: surplus density is Q_m / (2 e_c)
  CorridorScenario zero = sc;
  zero.C_f_a = 0.0;
  zero.C_v_a = 0.0;
  zero.alpha_T = 0.0;
  const double qm = modal_demand(zero, pol, 0.0, Mode::Auto);
  CHECK(surplus_density(zero, pol, 0.0, Mode::Auto) ==
        doctest::Approx(qm / (2.0 * zero.e_c)).epsilon(1e-12));

  // choke-cost mode: zero surplus
  CorridorScenario choke = sc;
  choke.C_f_a = 70.0;
  CHECK(surplus_density(choke, pol, 0.0, Mode::Auto) == doctest::Approx(0.0));
}

TEST_CASE("operating cost and fleet size") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_based(13.0, 5.0);
  CHECK(fleet_size(sc, pol) == doctest::Approx(52.0));
  CHECK(operating_cost(sc, pol) == doctest::Approx(36000.0));

  StagePolicy slow = StagePolicy::fare_based(1e-9, 5.0);
  CHECK(operating_cost(sc, slow) == doctest::Approx(sc.g_f).epsilon(1e-9));

  StagePolicy twice = StagePolicy::fare_based(26.0, 5.0);
  CHECK(fleet_size(sc, twice) == doctest::Approx(2.0 * fleet_size(sc, pol)));
}

TEST_CASE("collection cost") {
  CorridorScenario sc = baseline();

  // whole corridor fare-free leaves only the fixed component
  StagePolicy full = StagePolicy::fare_free(50.0, 10.0, 5.0);
  CHECK(collection_cost(sc, full) == doctest::Approx(5000.0));

  // empty corridor isolates the fixed and per-mile parts
  CorridorScenario empty = sc;
  empty.Q_CBD = 0.0;
  StagePolicy p1 = StagePolicy::fare_free(32.0, 10.0, 5.0);
  CHECK(collection_cost(empty, p1) == doctest::Approx(5000.0 + 500.0 * 18.0));

  // stage 0 depends only on the full route length
  StagePolicy p0 = StagePolicy::fare_based(10.0, 5.0);
  CHECK(collection_cost(empty, p0) == doctest::Approx(5000.0 + 500.0 * 50.0));
}

TEST_CASE("administration cost") {
  CorridorScenario sc = baseline();
  CHECK(admin_cost(sc, StagePolicy::fare_free(0.0, 10.0, 5.0)) ==
        doctest::Approx(10000.0));
  CHECK(admin_cost(sc, StagePolicy::fare_free(32.0, 10.0, 5.0)) ==
        doctest::Approx(20240.0));
  CHECK(admin_cost(sc, StagePolicy::fare_based(10.0, 5.0)) == 0.0);
}

TEST_CASE("degenerate zone: stage 1 at B=0 differs from stage 0 by the fixed admin cost") {
  CorridorScenario sc = baseline();
  const double F = 12.0;
  const WelfareBreakdown w0 = stage_welfare(sc, StagePolicy::fare_based(F, sc.f));
  const WelfareBreakdown w1 =
      stage_welfare(sc, StagePolicy::fare_free(0.0, F, sc.f));
  CHECK(w1.total - w0.total == doctest::Approx(-sc.iota_f).epsilon(1e-10));
}

TEST_CASE("empty corridor welfare is minus the fixed costs") {
  CorridorScenario sc = baseline();
  sc.Q_CBD = 0.0;
  const double F = 10.0;
  const WelfareBreakdown w = stage_welfare(sc, StagePolicy::fare_based(F, sc.f));
  CHECK(w.user_surplus == doctest::Approx(0.0));
  CHECK(w.revenue == doctest::Approx(0.0));
  CHECK(w.total == doctest::Approx(-(w.operating_cost + w.collection_cost)));
}

TEST_CASE("welfare is affine in the CBD density at both stages") {
  CorridorScenario sc = baseline();
  const StagePolicy pols[] = {StagePolicy::fare_based(11.0, sc.f),
                              StagePolicy::fare_free(32.0, 13.0, sc.f)};
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> uq(0.0, 4000.0);
  for (const StagePolicy& pol : pols) {
    const WelfareCoefficients c = welfare_coefficients(sc, pol);
    for (int i = 0; i < 20; ++i) {
      CorridorScenario s2 = sc;
      s2.Q_CBD = uq(rng);
      const double direct = stage_welfare(s2, pol).total;
      const double affine = welfare_at(c, s2.Q_CBD);
      CHECK(std::fabs(direct - affine) <=
            1e-8 * std::max(1.0, std::fabs(direct)));
    }
  }
}

TEST_CASE("coefficient constant terms match the cost bookkeeping") {
  CorridorScenario sc = baseline();
  const double F = 11.0;
  const WelfareCoefficients c0 =
      welfare_coefficients(sc, StagePolicy::fare_based(F, sc.f));
  CHECK(c0.d_C == doctest::Approx(-sc.g_f - 2.0 * sc.g_v * sc.A * F / sc.v_b -
                                  sc.e_0 - sc.e_1 * sc.A));

  const double B = 32.0;
  const WelfareCoefficients c1 =
      welfare_coefficients(sc, StagePolicy::fare_free(B, F, sc.f));
  CHECK(c1.d_C ==
        doctest::Approx(-sc.g_f - 2.0 * sc.g_v * sc.A * F / sc.v_b - sc.iota_f -
                        sc.iota_v * B * B - sc.e_0 - sc.e_1 * (sc.A - B)));
}

TEST_CASE("doubling demand shifts welfare by exactly d_Q times the increment") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(25.0, 10.0, sc.f);
  const WelfareCoefficients c = welfare_coefficients(sc, pol);
  CorridorScenario s2 = sc;
  s2.Q_CBD = 2.0 * sc.Q_CBD;
  const double w1 = stage_welfare(sc, pol).total;
  const double w2 = stage_welfare(s2, pol).total;
  CHECK(w2 - w1 == doctest::Approx(c.d_Q * sc.Q_CBD).epsilon(1e-8));
}

TEST_CASE("raising the fare weakly lowers user surplus at fixed frequency") {
  CorridorScenario sc = baseline();
  double previous = std::numeric_limits<double>::infinity();
  for (double fare : {0.0, 2.0, 5.0, 8.0}) {
    CorridorScenario s = sc;
    s.f = fare;
    const double u =
        stage_welfare(s, StagePolicy::fare_based(10.0, fare)).user_surplus;
    CHECK(u <= previous + 1e-9);
    previous = u;
  }
}

TEST_CASE("welfare gain: affine structure and the two-path identity") {
  CorridorScenario sc = baseline();
  const WelfareCoefficients c0 =
      welfare_coefficients(sc, StagePolicy::fare_based(11.0, sc.f));
  const WelfareCoefficients c1 =
      welfare_coefficients(sc, StagePolicy::fare_free(32.0, 13.0, sc.f));

  const double dC = c1.d_C - c0.d_C;
  const double dQ = c1.d_Q - c0.d_Q;
  CHECK(welfare_gain(c0, c1, 0.0) == doctest::Approx(dC));
  CHECK(welfare_gain(c0, c1, -dC / dQ) == doctest::Approx(0.0).epsilon(1e-10));

  // two-path: direct W1 - W0 evaluation vs the affine difference
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> uq(100.0, 3000.0);
  for (int i = 0; i < 10; ++i) {
    CorridorScenario s = sc;
    s.Q_CBD = uq(rng);
    const double direct =
        stage_welfare(s, StagePolicy::fare_free(32.0, 13.0, sc.f)).total -
        stage_welfare(s, StagePolicy::fare_based(11.0, sc.f)).total;
    const double viagain = welfare_gain(c0, c1, s.Q_CBD);
    CHECK(std::fabs(direct - viagain) <=
          1e-8 * std::max(1.0, std::fabs(direct)));
  }

  CHECK_THROWS_AS(gain_coefficients(c0, c1, 0.01, 0.02), SolverError);
  const GainCoefficients g = gain_coefficients(c0, c1, 0.02, 0.0116);
  CHECK(g.nu_0 == doctest::Approx(dQ / (0.02 - 0.0116)));
  CHECK(g.nu_1 == doctest::Approx(dC / 0.02));
}

TEST_CASE("flat-cost corridor: closed-form welfare components") {
  // With zero travel-time value, zero variable auto cost and psi = 0 the
  // split is 1/2 everywhere and both generalized costs are constants, so
  // every integral collapses to a triangle area.
  CorridorScenario sc;
  sc.alpha_T = 0.0;
  sc.C_v_a = 0.0;
  sc.psi = 0.0;
  const double F = 10.0, B = 20.0;
  const double c_auto = sc.C_f_a;
  const double wait_access = sc.alpha_w / (2.0 * F) + sc.alpha_S * sc.S;
  const double c_bus_out = wait_access + sc.f;
  const double c_bus_in = wait_access;
  auto sf = [&](double c) {
    return 0.5 / sc.e_c - c + 0.5 * sc.e_c * c * c;
  };
  const double A = sc.A, Q = sc.Q_CBD;
  const double tri_all = Q * A / 2.0;  // total potential demand

  // stage 0: every rider pays the fare on the whole corridor
  {
    const WelfareBreakdown w = stage_welfare(sc, StagePolicy::fare_based(F, sc.f));
    const double u_expect = 0.5 * tri_all * (sf(c_auto) + sf(c_bus_out));
    CHECK(w.user_surplus == doctest::Approx(u_expect).epsilon(1e-10));
    const double riders = 0.5 * tri_all * (1.0 - sc.e_c * c_bus_out);
    CHECK(w.revenue == doctest::Approx(sc.f * riders).epsilon(1e-10));
    CHECK(w.collection_cost ==
          doctest::Approx(sc.e_0 + sc.e_1 * A + sc.e_2 * riders).epsilon(1e-10));
  }

  // stage 1: the inner zone rides free, the outer span pays
  {
    const WelfareBreakdown w =
        stage_welfare(sc, StagePolicy::fare_free(B, F, sc.f));
    const double inner = Q * B * (2.0 * A - B) / (2.0 * A);
    const double outer = Q * (A - B) * (A - B) / (2.0 * A);
    CHECK(inner + outer == doctest::Approx(tri_all).epsilon(1e-12));
    const double u_expect = 0.5 * (inner + outer) * sf(c_auto) +
                            0.5 * inner * sf(c_bus_in) +
                            0.5 * outer * sf(c_bus_out);
    CHECK(w.user_surplus == doctest::Approx(u_expect).epsilon(1e-10));
    const double riders_out = 0.5 * outer * (1.0 - sc.e_c * c_bus_out);
    CHECK(w.revenue == doctest::Approx(sc.f * riders_out).epsilon(1e-10));
    CHECK(w.collection_cost ==
          doctest::Approx(sc.e_0 + sc.e_1 * (A - B) + sc.e_2 * riders_out)
              .epsilon(1e-10));
    CHECK(w.total == doctest::Approx(w.user_surplus + w.revenue -
                                     w.operating_cost - w.collection_cost -
                                     w.admin_cost));
  }
}

TEST_CASE("stage-1 objective can exclude the administration term") {
  CorridorScenario sc = baseline();
  CorridorScenario no_admin = sc;
  no_admin.stage1_admin_term = false;
  StagePolicy pol = StagePolicy::fare_free(32.0, 13.0, sc.f);
  const double with_term = stage_welfare(sc, pol).total;
  const double without = stage_welfare(no_admin, pol).total;
  CHECK(without - with_term == doctest::Approx(admin_cost(sc, pol)));
}

TEST_SUITE_END();
