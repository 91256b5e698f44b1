#pragma once

#include <vector>

#include "fareopt/equity.hpp"
#include "fareopt/scenario.hpp"
#include "fareopt/welfare.hpp"

namespace fareopt {

struct Range {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;
};

/// Grid-search specification: coarse ranges plus local refinement passes
/// (each pass shrinks the step by 10x around the incumbent).
struct SearchSpec {
  Range F_range{1.0, 40.0, 1.0};  // vehicles/hr
  Range B_range{0.0, 50.0, 1.0};  // miles
  int refinements = 2;

  void validate() const;
};

SearchSpec default_search(const CorridorScenario& sc);

struct SurfacePoint {
  double B = 0.0;
  double F = 0.0;
  double W = 0.0;
};

struct OptimumResult {
  double B_star = 0.0;
  double F_star = 0.0;
  double W_star = 0.0;
  bool boundary_optimum = false;
  // Every evaluated (B, F, W) sample: the coarse grid first, then the
  // refinement windows.
  std::vector<SurfacePoint> surface;
};

/// Stage-0 frequency search (B fixed at 0, fare charged everywhere).
OptimumResult optimize_stage0(const CorridorScenario& sc,
                              const SearchSpec& spec);

/// Stage-1 joint (B, F) search.
OptimumResult optimize_stage1(const CorridorScenario& sc,
                              const SearchSpec& spec);

/// Benefit-index scan over B with per-B frequency choice.
struct BenefitOptimum {
  double B_star = 0.0;   // argmax of G(B) among feasible points
  double F_star = 0.0;
  double G_star = 0.0;
  bool boundary_optimum = false;
  OptimumResult welfare_optimum;  // stage-1 welfare optimum used as anchor
  OptimumResult stage0_optimum;
  std::vector<EquityReport> scan;
};

/// Maximizes G(B) = (1-mu) SW(B) + mu (1 - E(B)) subject to the beta
/// bounds on E(B). Frequency is re-optimized per B unless frozen. Ties
/// break toward larger B.
BenefitOptimum optimize_benefit(const CorridorScenario& sc,
                                const SearchSpec& spec, double mu,
                                double beta_min, double beta_max,
                                double benefit_B_step = 0.1,
                                bool freeze_frequency = false);

/// Best frequency for a fixed stage-1 zone length (same refinement scheme
/// as the joint search).
double optimize_frequency_for_B(const CorridorScenario& sc,
                                const SearchSpec& spec, double B);

}  // namespace fareopt
