#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace fareopt::quad {

struct Result {
  double value = 0.0;
  double error = 0.0;  // accumulated panel error estimates
  int panels = 0;
  bool converged = true;
};

namespace detail {

// 15-point Kronrod rule with embedded 7-point Gauss rule.
// Row 0 is the center node; rows with weight_g == 0 are Kronrod-only.
// {abscissa, gauss weight, kronrod weight}
inline constexpr double kG7K15[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0, 0.204432940075298892},
    {0.586087235467691130, 0.0, 0.169004726639267903},
    {0.864864423359769073, 0.0, 0.104790010322250184},
    {0.991455371120812639, 0.0, 0.022935322010529225}};

template <class F>
inline void gk15(F& f, double a, double b, double& value, double& err) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double g7 = kG7K15[0][1] * fc;
  double k15 = kG7K15[0][2] * fc;
  for (int i = 1; i < 8; ++i) {
    const double dx = h * kG7K15[i][0];
    const double s = f(c - dx) + f(c + dx);
    g7 += kG7K15[i][1] * s;
    k15 += kG7K15[i][2] * s;
  }
  value = k15 * h;
  err = std::fabs(k15 - g7) * std::fabs(h);
}

template <class F>
void adapt(F& f, double a, double b, double tol, int depth, int max_depth,
           Result& out) {
  double v = 0.0, e = 0.0;
  gk15(f, a, b, v, e);
  ++out.panels;
  const double roundoff_floor = 50.0 * 2.220446049250313e-16 * std::fabs(v);
  if (e <= tol || e <= roundoff_floor || depth >= max_depth) {
    out.value += v;
    out.error += e;
    if (depth >= max_depth && e > tol && e > roundoff_floor)
      out.converged = false;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth + 1, max_depth, out);
  adapt(f, m, b, 0.5 * tol, depth + 1, max_depth, out);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to an absolute
/// tolerance. Panels that hit max_depth without meeting their share of the
/// tolerance mark the result as not converged.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-8,
                 int max_depth = 28) {
  Result out;
  if (a == b) return out;
  detail::adapt(f, a, b, abs_tol, 0, max_depth, out);
  return out;
}

/// Integrates over [a, b] split at the given interior breakpoints so that a
/// discontinuity or kink never straddles a panel.
template <class F>
Result integrate_split(F&& f, double a, double b,
                       std::span<const double> breaks, double abs_tol = 1e-8,
                       int max_depth = 28) {
  std::vector<double> cuts;
  cuts.push_back(a);
  for (double x : breaks)
    if (x > a && x < b) cuts.push_back(x);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());

  Result out;
  const int pieces = static_cast<int>(cuts.size()) - 1;
  for (int i = 0; i < pieces; ++i) {
    Result piece = integrate(f, cuts[i], cuts[i + 1], abs_tol / pieces, max_depth);
    out.value += piece.value;
    out.error += piece.error;
    out.panels += piece.panels;
    out.converged = out.converged && piece.converged;
  }
  return out;
}

}  // namespace fareopt::quad
