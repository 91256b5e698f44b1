#include "fareopt/equity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fareopt/corridor.hpp"
#include "fareopt/errors.hpp"
#include "fareopt/quadrature.hpp"

namespace fareopt {

std::vector<GroupSurplus> group_surpluses(const CorridorScenario& sc,
                                          const StagePolicy& pol) {
  validate_policy(sc, pol);
  if (sc.Q_CBD == 0.0) return {};
  const int n = sc.n_groups;
  std::vector<GroupSurplus> groups;
  groups.reserve(n);
  auto surplus_both = [&](double x) {
    return surplus_density(sc, pol, x, Mode::Bus) +
           surplus_density(sc, pol, x, Mode::Auto);
  };
  for (int z = 0; z < n; ++z) {
    GroupSurplus g;
    g.group_index = z;
    g.x_lo = sc.A * z / n;
    g.x_hi = sc.A * (z + 1) / n;
    const double breaks[] = {pol.B};
    const double surplus =
        quad::integrate_split(surplus_both, g.x_lo, g.x_hi, breaks, 1e-9)
            .value;
    // Potential demand over the segment; the density is linear so the
    // trapezoid area is exact.
    g.segment_demand = sc.Q_CBD * (g.x_hi - g.x_lo) *
                       (1.0 - 0.5 * (g.x_lo + g.x_hi) / sc.A);
    g.mean_surplus = surplus / g.segment_demand;
    groups.push_back(g);
  }
  return groups;
}

double gini(std::span<const double> values) {
  if (values.empty()) throw ValidationError("gini: empty input");
  double total = 0.0;
  for (double v : values) {
    if (v < 0.0) throw ValidationError("gini: negative value");
    total += v;
  }
  if (total <= 0.0)
    throw ValidationError("gini: undefined for all-zero input");
  const std::size_t n = values.size();
  double abs_diff_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      abs_diff_sum += std::fabs(values[i] - values[j]);
  return abs_diff_sum / (2.0 * static_cast<double>(n) * total);
}

std::vector<LorenzPoint> lorenz_curve(std::span<const double> values,
                                      std::span<const double> weights) {
  if (values.size() != weights.size() || values.empty())
    throw ValidationError("lorenz_curve: mismatched or empty input");
  double total_w = 0.0, total_s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 0.0 || weights[i] < 0.0)
      throw ValidationError("lorenz_curve: negative value or weight");
    total_w += weights[i];
    total_s += values[i] * weights[i];
  }
  if (total_w <= 0.0 || total_s <= 0.0)
    throw ValidationError("lorenz_curve: zero total demand or surplus");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });

  std::vector<LorenzPoint> pts;
  pts.reserve(values.size() + 1);
  pts.push_back({0.0, 0.0});
  double cw = 0.0, cs = 0.0;
  for (std::size_t idx : order) {
    cw += weights[idx];
    cs += values[idx] * weights[idx];
    pts.push_back({cw / total_w, cs / total_s});
  }
  pts.back() = {1.0, 1.0};  // absorb rounding at the endpoint
  return pts;
}

std::vector<EquityReport> benefit_index(const CorridorScenario& sc,
                                        std::span<const ZoneFrequency> scan,
                                        double mu, double beta_min,
                                        double beta_max,
                                        const BenefitNormalization& norm) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw ValidationError("benefit_index: mu must lie in [0, 1]");
  if (!(0.0 <= beta_min && beta_min <= beta_max && beta_max <= 1.0))
    throw ValidationError("benefit_index: need 0 <= beta_min <= beta_max <= 1");
  const double denom = norm.W1_at_B_star - norm.W0;
  if (denom == 0.0)
    throw SolverError(
        "benefit_index: SW normalization undefined (W_1(B*) equals W_0)");

  std::vector<EquityReport> out;
  out.reserve(scan.size());
  for (const ZoneFrequency& zf : scan) {
    EquityReport r;
    r.B = zf.B;
    r.F = zf.F;
    r.mu = mu;
    r.beta_min = beta_min;
    r.beta_max = beta_max;
    const StagePolicy pol = StagePolicy::fare_free(zf.B, zf.F, sc.f);
    r.welfare_total = stage_welfare(sc, pol).total;

    const auto groups = group_surpluses(sc, pol);
    std::vector<double> vals, wts;
    vals.reserve(groups.size());
    wts.reserve(groups.size());
    for (const auto& g : groups) {
      vals.push_back(g.mean_surplus);
      wts.push_back(g.segment_demand);
    }
    r.gini = gini(vals);
    r.lorenz = lorenz_curve(vals, wts);
    r.sw_index = (r.welfare_total - norm.W0) / denom;
    r.benefit = (1.0 - mu) * r.sw_index + mu * (1.0 - r.gini);
    r.feasible = r.gini >= beta_min && r.gini <= beta_max;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace fareopt
