#include <cmath>
#include <random>

#include "doctest.h"
#include "fareopt/equity.hpp"
#include "fareopt/errors.hpp"
#include "fareopt/static_optimizer.hpp"
#include "oracles.hpp"

using namespace fareopt;

namespace {

CorridorScenario baseline() { return CorridorScenario{}; }

std::vector<double> group_values(const CorridorScenario& sc,
                                 const StagePolicy& pol) {
  std::vector<double> vals;
  for (const auto& g : group_surpluses(sc, pol)) vals.push_back(g.mean_surplus);
  return vals;
}

std::vector<double> group_weights(const CorridorScenario& sc,
                                  const StagePolicy& pol) {
  std::vector<double> wts;
  for (const auto& g : group_surpluses(sc, pol)) wts.push_back(g.segment_demand);
  return wts;
}

}  // namespace

TEST_SUITE_BEGIN("equity");

TEST_CASE("groups tile the corridor without gaps") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(32.0, 13.0, sc.f);
  const auto groups = group_surpluses(sc, pol);
  REQUIRE(static_cast<int>(groups.size()) == sc.n_groups);
  CHECK(groups.front().x_lo == doctest::Approx(0.0));
  CHECK(groups.back().x_hi == doctest::Approx(sc.A));
  for (std::size_t i = 1; i < groups.size(); ++i)
    CHECK(groups[i].x_lo == doctest::Approx(groups[i - 1].x_hi));
  for (const auto& g : groups) {
    CHECK(g.mean_surplus >= 0.0);
    CHECK(g.segment_demand > 0.0);
  }
}

TEST_CASE("inner group gains at least as much as the outer one") {
  CorridorScenario sc = baseline();
  sc.n_groups = 2;
  sc.f = 0.0;
  const auto groups = group_surpluses(sc, StagePolicy::fare_based(10.0, 0.0));
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].mean_surplus >= groups[1].mean_surplus);
}

TEST_CASE("no travelers, no report") {
  CorridorScenario sc = baseline();
  sc.Q_CBD = 0.0;
  CHECK(group_surpluses(sc, StagePolicy::fare_based(10.0, 5.0)).empty());
}

TEST_CASE("gini: hand-checked values and guards") {
  const double equal[] = {5.0, 5.0, 5.0, 5.0};
  CHECK(gini(equal) == doctest::Approx(0.0));

  const double halves[] = {0.0, 3.7};
  CHECK(gini(halves) == doctest::Approx(0.5));

  const double zeros[] = {0.0, 0.0};
  CHECK_THROWS_AS(gini(zeros), ValidationError);
  const double negative[] = {1.0, -0.5};
  CHECK_THROWS_AS(gini(negative), ValidationError);
}

TEST_CASE("gini: scale invariance and translation") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> uv(0.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> v(12);
    for (double& x : v) x = uv(rng);
    v[0] += 1.0;  // guarantee dispersion and a positive total
    const double g = gini(v);

    std::vector<double> scaled = v;
    for (double& x : scaled) x *= 37.5;
    CHECK(gini(scaled) == doctest::Approx(g).epsilon(1e-12));

    std::vector<double> shifted = v;
    for (double& x : shifted) x += 4.2;
    CHECK(gini(shifted) < g);
  }
}

TEST_CASE("lorenz curve endpoints, monotonicity, convexity") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(32.0, 13.0, sc.f);
  const auto vals = group_values(sc, pol);
  const auto wts = group_weights(sc, pol);
  const auto pts = lorenz_curve(vals, wts);
  REQUIRE(pts.size() == vals.size() + 1);
  CHECK(pts.front().cum_demand_share == doctest::Approx(0.0));
  CHECK(pts.front().cum_surplus_share == doctest::Approx(0.0));
  CHECK(pts.back().cum_demand_share == doctest::Approx(1.0));
  CHECK(pts.back().cum_surplus_share == doctest::Approx(1.0));
  double prev_slope = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].cum_demand_share >= pts[i - 1].cum_demand_share);
    CHECK(pts[i].cum_surplus_share >= pts[i - 1].cum_surplus_share - 1e-12);
    const double dx = pts[i].cum_demand_share - pts[i - 1].cum_demand_share;
    if (dx > 0.0) {
      const double slope =
          (pts[i].cum_surplus_share - pts[i - 1].cum_surplus_share) / dx;
      CHECK(slope >= prev_slope - 1e-9);
      prev_slope = slope;
    }
  }
}

TEST_CASE("equal values put the lorenz curve on the diagonal") {
  const std::vector<double> vals(8, 3.0);
  std::vector<double> wts{1, 2, 3, 4, 4, 3, 2, 1};
  for (const auto& p : lorenz_curve(vals, wts))
    CHECK(p.cum_surplus_share == doctest::Approx(p.cum_demand_share).epsilon(1e-12));
}

TEST_CASE("lorenz area reproduces the pairwise gini of the same weighting") {
  CorridorScenario sc = baseline();
  StagePolicy pol = StagePolicy::fare_free(32.0, 13.0, sc.f);
  const auto vals = group_values(sc, pol);
  const auto wts = group_weights(sc, pol);
  auto area_gini = [](const std::vector<LorenzPoint>& pts) {
    double area = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      area += 0.5 * (pts[i].cum_surplus_share + pts[i - 1].cum_surplus_share) *
              (pts[i].cum_demand_share - pts[i - 1].cum_demand_share);
    return 1.0 - 2.0 * area;
  };
  const double tol = 2.0 / static_cast<double>(sc.n_groups);

  // unweighted curve against the plain pairwise index
  const std::vector<double> unit(vals.size(), 1.0);
  const double g_plain = gini(vals);
  const double g_area_plain = area_gini(lorenz_curve(vals, unit));
  CHECK(std::fabs(g_area_plain - g_plain) <= tol * g_plain);

  // demand-weighted curve against the weighted pairwise oracle
  const double g_weighted = oracle::weighted_gini(vals, wts);
  const double g_area_weighted = area_gini(lorenz_curve(vals, wts));
  CHECK(std::fabs(g_area_weighted - g_weighted) <= tol * g_weighted);
}

TEST_CASE("benefit index over a coarse scan") {
  CorridorScenario sc = baseline();
  SearchSpec spec = default_search(sc);

  SUBCASE("mu = 0 recovers the welfare optimum") {
    const BenefitOptimum bo = optimize_benefit(sc, spec, 0.0, 0.0, 1.0, 1.0);
    CHECK(bo.B_star == doctest::Approx(bo.welfare_optimum.B_star));
    for (const auto& r : bo.scan) CHECK(r.sw_index <= 1.0 + 1e-12);
  }

  SUBCASE("mu = 1 pushes the zone to the whole corridor") {
    const BenefitOptimum bo = optimize_benefit(sc, spec, 1.0, 0.0, 1.0, 1.0);
    CHECK(bo.B_star == doctest::Approx(sc.A));
  }

  SUBCASE("normalization anchor scores exactly one") {
    const BenefitOptimum bo = optimize_benefit(sc, spec, 0.3, 0.0, 1.0, 1.0);
    double best = -1.0;
    for (const auto& r : bo.scan)
      if (r.B == bo.welfare_optimum.B_star) best = r.sw_index;
    CHECK(best == doctest::Approx(1.0));
  }

  SUBCASE("equity weighting never shrinks the optimal zone") {
    const BenefitOptimum b0 = optimize_benefit(sc, spec, 0.0, 0.0, 1.0, 1.0);
    const BenefitOptimum b5 = optimize_benefit(sc, spec, 0.5, 0.0, 1.0, 1.0);
    CHECK(b5.B_star >= b0.B_star);
  }

  SUBCASE("frozen frequency reuses the welfare optimum everywhere") {
    const BenefitOptimum bo =
        optimize_benefit(sc, spec, 0.5, 0.0, 1.0, 5.0, /*freeze=*/true);
    for (const auto& r : bo.scan)
      CHECK(r.F == bo.welfare_optimum.F_star);
  }

  SUBCASE("infeasible equity bounds are rejected") {
    CHECK_THROWS_AS(optimize_benefit(sc, spec, 0.5, 0.0, 1e-6, 1.0),
                    SolverError);
  }
}

TEST_CASE("policy ordering of the gini index on the baseline") {
  CorridorScenario sc = baseline();
  SearchSpec spec = default_search(sc);
  const OptimumResult opt0 = optimize_stage0(sc, spec);
  const OptimumResult opt1 = optimize_stage1(sc, spec);
  const double f_full = optimize_frequency_for_B(sc, spec, sc.A);

  const double g_fare_based =
      gini(group_values(sc, StagePolicy::fare_based(opt0.F_star, sc.f)));
  const double g_optimized = gini(group_values(
      sc, StagePolicy::fare_free(opt1.B_star, opt1.F_star, sc.f)));
  const double g_full =
      gini(group_values(sc, StagePolicy::fare_free(sc.A, f_full, sc.f)));

  CHECK(g_full < g_fare_based);
  CHECK(g_full < g_optimized);
}

TEST_SUITE_END();
