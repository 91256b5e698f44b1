#include "fareopt/static_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fareopt/errors.hpp"

namespace fareopt {

namespace {

std::vector<double> grid_values(const Range& r) {
  const int count = static_cast<int>(std::floor((r.max - r.min) / r.step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(count);
  for (int i = 0; i < count; ++i)
    v.push_back(std::min(r.min + i * r.step, r.max));
  return v;
}

Range window_around(double center, double halfwidth, double step,
                    const Range& bounds) {
  Range w;
  w.min = std::max(bounds.min, center - halfwidth);
  w.max = std::min(bounds.max, center + halfwidth);
  w.step = step;
  return w;
}

struct Incumbent {
  double B = 0.0;
  double F = 0.0;
  double W = -std::numeric_limits<double>::infinity();
  bool valid = false;

  // Argmax with deterministic tie-breaking: smaller F, then smaller B.
  void offer(double B_, double F_, double W_) {
    const bool better =
        W_ > W || (W_ == W && (F_ < F || (F_ == F && B_ < B)));
    if (!valid || better) {
      B = B_;
      F = F_;
      W = W_;
      valid = true;
    }
  }
};

double eval_welfare(const CorridorScenario& sc, Stage stage, double B,
                    double F) {
  const StagePolicy pol = stage == Stage::FareBased
                              ? StagePolicy::fare_based(F, sc.f)
                              : StagePolicy::fare_free(B, F, sc.f);
  return stage_welfare(sc, pol).total;
}

OptimumResult search(const CorridorScenario& sc, Stage stage,
                     const SearchSpec& spec, bool sweep_B) {
  spec.validate();
  OptimumResult res;
  Incumbent best;

  auto scan = [&](const Range& b_range, const Range& f_range) {
    const auto bs = sweep_B ? grid_values(b_range) : std::vector<double>{0.0};
    const auto fs = grid_values(f_range);
    for (double B : bs) {
      for (double F : fs) {
        const double W = eval_welfare(sc, stage, B, F);
        res.surface.push_back({B, F, W});
        best.offer(B, F, W);
      }
    }
  };

  scan(spec.B_range, spec.F_range);
  double b_step = spec.B_range.step;
  double f_step = spec.F_range.step;
  for (int pass = 0; pass < spec.refinements; ++pass) {
    const double b_half = b_step;
    const double f_half = f_step;
    b_step /= 10.0;
    f_step /= 10.0;
    scan(window_around(best.B, b_half, b_step, spec.B_range),
         window_around(best.F, f_half, f_step, spec.F_range));
  }

  if (!best.valid) throw SolverError("optimizer: empty search grid");
  res.B_star = best.B;
  res.F_star = best.F;
  res.W_star = best.W;
  const double b_tol = 0.5 * b_step;
  const double f_tol = 0.5 * f_step;
  res.boundary_optimum =
      (sweep_B && (std::fabs(best.B - spec.B_range.min) <= b_tol ||
                   std::fabs(best.B - spec.B_range.max) <= b_tol)) ||
      std::fabs(best.F - spec.F_range.min) <= f_tol ||
      std::fabs(best.F - spec.F_range.max) <= f_tol;
  return res;
}

}  // namespace

void SearchSpec::validate() const {
  if (!(F_range.step > 0.0) || !(B_range.step > 0.0))
    throw ValidationError("SearchSpec: steps must be > 0");
  if (F_range.max < F_range.min || B_range.max < B_range.min)
    throw ValidationError("SearchSpec: max must be >= min");
  if (!(F_range.min > 0.0))
    throw ValidationError("SearchSpec: frequencies must be > 0");
  if (B_range.min < 0.0)
    throw ValidationError("SearchSpec: zone lengths must be >= 0");
  if (refinements < 0)
    throw ValidationError("SearchSpec: refinements must be >= 0");
}

SearchSpec default_search(const CorridorScenario& sc) {
  SearchSpec spec;
  spec.B_range = {0.0, sc.A, 1.0};
  return spec;
}

OptimumResult optimize_stage0(const CorridorScenario& sc,
                              const SearchSpec& spec) {
  return search(sc, Stage::FareBased, spec, /*sweep_B=*/false);
}

OptimumResult optimize_stage1(const CorridorScenario& sc,
                              const SearchSpec& spec) {
  return search(sc, Stage::FareFree, spec, /*sweep_B=*/true);
}

double optimize_frequency_for_B(const CorridorScenario& sc,
                                const SearchSpec& spec, double B) {
  SearchSpec pinned = spec;
  pinned.B_range = {B, B, 1.0};
  return search(sc, Stage::FareFree, pinned, /*sweep_B=*/true).F_star;
}

BenefitOptimum optimize_benefit(const CorridorScenario& sc,
                                const SearchSpec& spec, double mu,
                                double beta_min, double beta_max,
                                double benefit_B_step,
                                bool freeze_frequency) {
  if (!(benefit_B_step > 0.0))
    throw ValidationError("optimize_benefit: B step must be > 0");

  BenefitOptimum out;
  out.stage0_optimum = optimize_stage0(sc, spec);
  out.welfare_optimum = optimize_stage1(sc, spec);

  Range b_grid{spec.B_range.min, spec.B_range.max, benefit_B_step};
  std::vector<double> bs = grid_values(b_grid);
  // Anchor the scan with the welfare optimum so SW(B*) = 1 lands on a
  // scanned point exactly.
  if (std::none_of(bs.begin(), bs.end(), [&](double b) {
        return b == out.welfare_optimum.B_star;
      })) {
    bs.push_back(out.welfare_optimum.B_star);
    std::sort(bs.begin(), bs.end());
  }

  std::vector<ZoneFrequency> scan;
  scan.reserve(bs.size());
  for (double B : bs) {
    ZoneFrequency zf;
    zf.B = B;
    zf.F = freeze_frequency ? out.welfare_optimum.F_star
                            : optimize_frequency_for_B(sc, spec, B);
    scan.push_back(zf);
  }

  // Normalize against the best stage-1 welfare seen in this scan; the
  // welfare optimum is one of the scanned points, so SW <= 1 throughout.
  BenefitNormalization norm;
  norm.W0 = out.stage0_optimum.W_star;
  norm.B_star = out.welfare_optimum.B_star;
  norm.W1_at_B_star = out.welfare_optimum.W_star;
  {
    double best_w = -std::numeric_limits<double>::infinity();
    double best_b = norm.B_star;
    for (const auto& zf : scan) {
      const double w =
          stage_welfare(sc, StagePolicy::fare_free(zf.B, zf.F, sc.f)).total;
      if (w > best_w) {
        best_w = w;
        best_b = zf.B;
      }
    }
    norm.B_star = best_b;
    norm.W1_at_B_star = best_w;
  }

  out.scan = benefit_index(sc, scan, mu, beta_min, beta_max, norm);

  bool any_feasible = false;
  double best_g = -std::numeric_limits<double>::infinity();
  for (const auto& r : out.scan) {
    if (!r.feasible) continue;
    any_feasible = true;
    // Ties break toward larger B (equity-favoring); the scan is sorted by
    // B ascending so >= keeps the largest tying zone.
    if (r.benefit >= best_g) {
      best_g = r.benefit;
      out.B_star = r.B;
      out.F_star = r.F;
      out.G_star = r.benefit;
    }
  }
  if (!any_feasible)
    throw SolverError(
        "optimize_benefit: no feasible zone length satisfies the equity "
        "bounds");
  out.boundary_optimum = out.B_star == spec.B_range.min ||
                         out.B_star == spec.B_range.max;
  return out;
}

}  // namespace fareopt
