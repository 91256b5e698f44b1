#include "fareopt/real_options.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fareopt/errors.hpp"
#include "fareopt/rng.hpp"

namespace fareopt {

namespace {

void check_process(const GbmParams& gbm) {
  if (!(gbm.sigma > 0.0))
    throw SolverError(
        "characteristic roots need sigma > 0; use the deterministic "
        "break-even instead");
  if (!(gbm.k > 0.0)) throw SolverError("discount rate k must be > 0");
}

void check_inputs(const SwitchingInputs& in) {
  check_process(in.gbm);
  if (!(in.gbm.k > in.gbm.eta))
    throw SolverError("switching analysis requires k > eta");
  if (!(in.gain.nu_0 > 0.0))
    throw SolverError(
        "switching analysis requires nu_0 > 0 (gain increasing in demand)");
}

// Residuals of the 4x4 system in unknowns u = (ln Qu, ln Ql, Y0, X1):
//   V1(Qu) - V0(Qu) - D = 0        (value matching at entry)
//   V0(Ql) - V1(Ql) - K = 0        (value matching at exit)
//   V1'(Qu) - V0'(Qu) = 0          (smooth pasting at entry)
//   V1'(Ql) - V0'(Ql) = 0          (smooth pasting at exit)
struct System {
  double g0, g1, nu0, nu1, D, K;
  double vm_scale, sp_scale;

  std::array<double, 4> residual(const std::array<double, 4>& u) const {
    const double Qu = std::exp(u[0]), Ql = std::exp(u[1]);
    const double Y0 = u[2], X1 = u[3];
    std::array<double, 4> r;
    r[0] = (X1 * std::pow(Qu, g0) + nu0 * Qu + nu1 - Y0 * std::pow(Qu, g1) -
            D) /
           vm_scale;
    r[1] = (Y0 * std::pow(Ql, g1) - X1 * std::pow(Ql, g0) - nu0 * Ql - nu1 -
            K) /
           vm_scale;
    r[2] = (g0 * X1 * std::pow(Qu, g0 - 1.0) + nu0 -
            g1 * Y0 * std::pow(Qu, g1 - 1.0)) /
           sp_scale;
    r[3] = (g0 * X1 * std::pow(Ql, g0 - 1.0) + nu0 -
            g1 * Y0 * std::pow(Ql, g1 - 1.0)) /
           sp_scale;
    return r;
  }

  // Analytic Jacobian w.r.t. (ln Qu, ln Ql, Y0, X1).
  std::array<std::array<double, 4>, 4> jacobian(
      const std::array<double, 4>& u) const {
    const double Qu = std::exp(u[0]), Ql = std::exp(u[1]);
    const double Y0 = u[2], X1 = u[3];
    std::array<std::array<double, 4>, 4> J{};
    J[0][0] = (g0 * X1 * std::pow(Qu, g0) + nu0 * Qu -
               g1 * Y0 * std::pow(Qu, g1)) /
              vm_scale;
    J[0][2] = -std::pow(Qu, g1) / vm_scale;
    J[0][3] = std::pow(Qu, g0) / vm_scale;
    J[1][1] = (g1 * Y0 * std::pow(Ql, g1) - g0 * X1 * std::pow(Ql, g0) -
               nu0 * Ql) /
              vm_scale;
    J[1][2] = std::pow(Ql, g1) / vm_scale;
    J[1][3] = -std::pow(Ql, g0) / vm_scale;
    J[2][0] = (g0 * (g0 - 1.0) * X1 * std::pow(Qu, g0 - 1.0) -
               g1 * (g1 - 1.0) * Y0 * std::pow(Qu, g1 - 1.0)) /
              sp_scale;
    J[2][2] = -g1 * std::pow(Qu, g1 - 1.0) / sp_scale;
    J[2][3] = g0 * std::pow(Qu, g0 - 1.0) / sp_scale;
    J[3][1] = (g0 * (g0 - 1.0) * X1 * std::pow(Ql, g0 - 1.0) -
               g1 * (g1 - 1.0) * Y0 * std::pow(Ql, g1 - 1.0)) /
              sp_scale;
    J[3][2] = -g1 * std::pow(Ql, g1 - 1.0) / sp_scale;
    J[3][3] = g0 * std::pow(Ql, g0 - 1.0) / sp_scale;
    return J;
  }
};

double inf_norm(const std::array<double, 4>& r) {
  double m = 0.0;
  for (double v : r) m = std::max(m, std::fabs(v));
  return m;
}

// Gaussian elimination with partial pivoting and column equilibration.
std::array<double, 4> solve4(std::array<std::array<double, 4>, 4> A,
                             std::array<double, 4> b) {
  std::array<double, 4> col_scale;
  for (int j = 0; j < 4; ++j) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::fabs(A[i][j]));
    col_scale[j] = m > 0.0 ? m : 1.0;
    for (int i = 0; i < 4; ++i) A[i][j] /= col_scale[j];
  }
  for (int c = 0; c < 4; ++c) {
    int piv = c;
    for (int i = c + 1; i < 4; ++i)
      if (std::fabs(A[i][c]) > std::fabs(A[piv][c])) piv = i;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    if (A[c][c] == 0.0) throw SolverError("singular Newton Jacobian");
    for (int i = c + 1; i < 4; ++i) {
      const double m = A[i][c] / A[c][c];
      for (int j = c; j < 4; ++j) A[i][j] -= m * A[c][j];
      b[i] -= m * b[c];
    }
  }
  std::array<double, 4> x{};
  for (int i = 3; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < 4; ++j) s -= A[i][j] * x[j];
    x[i] = s / A[i][i];
  }
  for (int j = 0; j < 4; ++j) x[j] /= col_scale[j];
  return x;
}

// Constants of the zero-cost solution at threshold q: smooth pasting plus
// second-order matching pin down (Y0, X1) up to the location of q.
void zero_cost_constants(double g0, double g1, double nu0, double q,
                         double& Y0, double& X1) {
  X1 = nu0 * (g1 - 1.0) * std::pow(q, 1.0 - g0) / (g0 * (g0 - g1));
  Y0 = X1 * (g0 * (g0 - 1.0)) / (g1 * (g1 - 1.0)) * std::pow(q, g0 - g1);
}

}  // namespace

RootPair characteristic_roots(const GbmParams& gbm) {
  check_process(gbm);
  const double s2 = gbm.sigma * gbm.sigma;
  const double a = 0.5 - gbm.eta / s2;
  const double disc = std::sqrt(a * a + 2.0 * gbm.k / s2);
  return {a + disc, a - disc};
}

double single_threshold(const SwitchingInputs& in) {
  check_inputs(in);
  if (!(in.gain.nu_1 < 0.0))
    throw SolverError(
        "single_threshold: needs nu_1 < 0 < nu_0 for an interior switch "
        "point");
  const RootPair r = characteristic_roots(in.gbm);
  const double q = r.gamma_neg * r.gamma_pos * in.gain.nu_1 /
                   ((1.0 - r.gamma_neg) * (r.gamma_pos - 1.0) * in.gain.nu_0);
  if (!(q > 0.0))
    throw SolverError("single_threshold: no interior switch point");
  return q;
}

SwitchingSolution solve_thresholds(const SwitchingInputs& in) {
  check_inputs(in);
  if (!(in.activation_cost > 0.0) || !(in.deactivation_cost > 0.0))
    throw ValidationError(
        "solve_thresholds: switching costs must be > 0 (use single_threshold "
        "for the zero-cost case)");
  // The value of reverting is bounded by the perpetual loss escaped at zero
  // demand, -nu_1; a deactivation cost at or above it admits no finite exit
  // threshold.
  if (!(in.deactivation_cost < -in.gain.nu_1)) {
    std::ostringstream os;
    os << "solve_thresholds: deactivation cost " << in.deactivation_cost
       << " is not below -nu_1 = " << -in.gain.nu_1
       << "; reverting would never pay and the exit threshold is not finite";
    throw SolverError(os.str());
  }

  const RootPair roots = characteristic_roots(in.gbm);
  const double q_star = single_threshold(in);

  System sys;
  sys.g0 = roots.gamma_neg;
  sys.g1 = roots.gamma_pos;
  sys.nu0 = in.gain.nu_0;
  sys.nu1 = in.gain.nu_1;
  sys.D = in.activation_cost;
  sys.K = in.deactivation_cost;
  sys.vm_scale = std::max({1.0, sys.D, sys.K});
  sys.sp_scale = std::max(1.0, sys.nu0);

  auto newton = [](const System& s, std::array<double, 4> u) {
    auto r = s.residual(u);
    double rn = inf_norm(r);
    for (int iter = 0; iter < 120; ++iter) {
      if (rn < 1e-11) break;
      auto J = s.jacobian(u);
      std::array<double, 4> rhs = {-r[0], -r[1], -r[2], -r[3]};
      std::array<double, 4> step = solve4(J, rhs);
      double lambda = 1.0;
      bool accepted = false;
      for (int half = 0; half < 40; ++half) {
        std::array<double, 4> trial = u;
        for (int j = 0; j < 4; ++j) trial[j] += lambda * step[j];
        auto rt = s.residual(trial);
        const double rtn = inf_norm(rt);
        if (std::isfinite(rtn) && rtn < rn) {
          u = trial;
          r = rt;
          rn = rtn;
          accepted = true;
          break;
        }
        lambda *= 0.5;
      }
      if (!accepted) break;
    }
    return std::pair<std::array<double, 4>, double>{u, rn};
  };

  auto package = [&](const std::array<double, 4>& u, double rn) {
    SwitchingSolution sol;
    sol.roots = roots;
    sol.Q_star = q_star;
    sol.Q_upper = std::exp(u[0]);
    sol.Q_lower = std::exp(u[1]);
    sol.Y0 = u[2];
    sol.X1 = u[3];
    sol.residual_norm = rn;
    return sol;
  };

  // Initial bracket around the zero-cost threshold, sized by the small-cost
  // asymptotics (the band width grows like the cube root of the switching
  // cost); deterministic restarts jitter it if a try stalls.
  const double value_scale = in.gain.nu_0 * q_star;
  auto bracket = [&](double cost) {
    const double rel = std::min(1.0, cost / value_scale);
    return 1.0 + std::clamp(1.6 * std::cbrt(rel), 1e-3, 2.0);
  };
  auto start_from_brackets = [&](double up, double down) {
    std::array<double, 4> u;
    u[0] = std::log(q_star * up);
    u[1] = std::log(q_star / down);
    zero_cost_constants(sys.g0, sys.g1, sys.nu0, q_star, u[2], u[3]);
    return u;
  };

  NormalRng jitter(42u, 0u);
  SwitchingSolution best;
  best.residual_norm = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart <= 8; ++restart) {
    double up = bracket(sys.D), down = bracket(sys.K);
    if (restart > 0) {
      const double wu = 0.4 + 1.2 * jitter.uniform();
      const double wd = 0.4 + 1.2 * jitter.uniform();
      up = 1.0 + (up - 1.0) * wu;
      down = 1.0 + (down - 1.0) * wd;
    }
    const auto [u, rn] = newton(sys, start_from_brackets(up, down));
    if (rn < best.residual_norm) best = package(u, rn);
    if (best.residual_norm < 1e-11) break;
  }

  // Costs comparable to the whole option value push the thresholds far from
  // the zero-cost point; walk the costs up from a benign level, warm-starting
  // each solve from the previous solution and shrinking the step when a
  // stage stalls.
  if (!(best.residual_norm < 1e-11)) {
    const double shrink =
        std::min(1.0, 1e-3 * value_scale / std::max(sys.D, sys.K));
    System cont = sys;
    auto at_level = [&](double level) {
      cont.D = sys.D * level;
      cont.K = sys.K * level;
      cont.vm_scale = std::max({1.0, cont.D, cont.K});
    };
    at_level(shrink);
    auto [u, rn] =
        newton(cont, start_from_brackets(bracket(cont.D), bracket(cont.K)));
    double level = shrink;
    double factor = 10.0;
    int budget = 300;
    while (rn < 1e-11 && level < 1.0 && budget-- > 0) {
      const double next = std::min(1.0, level * factor);
      at_level(next);
      const auto [u_try, rn_try] = newton(cont, u);
      if (rn_try < 1e-11) {
        u = u_try;
        rn = rn_try;
        level = next;
      } else {
        factor = std::sqrt(factor);
        if (factor < 1.0000001) break;
      }
    }
    if (level == 1.0 && rn < best.residual_norm) best = package(u, rn);
  }

  if (!(best.residual_norm < 1e-8)) {
    std::ostringstream os;
    os << "solve_thresholds: Newton did not converge; last scaled residual "
       << best.residual_norm;
    if (in.deactivation_cost > 0.99 * -in.gain.nu_1)
      os << " (deactivation cost within 1% of -nu_1 = " << -in.gain.nu_1
         << "; the exit threshold degenerates toward zero demand)";
    throw SolverError(os.str());
  }
  if (!(best.Q_lower < best.Q_star && best.Q_star < best.Q_upper)) {
    std::ostringstream os;
    os << "solve_thresholds: hysteresis ordering violated (Q_lower="
       << best.Q_lower << ", Q_star=" << best.Q_star
       << ", Q_upper=" << best.Q_upper << ")";
    throw SolverError(os.str());
  }
  return best;
}

std::pair<double, double> value_functions(const SwitchingSolution& sol,
                                          const SwitchingInputs& in,
                                          double Q) {
  if (!(Q > 0.0)) throw std::domain_error("value_functions: Q must be > 0");
  const double v0 = sol.Y0 * std::pow(Q, sol.roots.gamma_pos);
  const double v1 = sol.X1 * std::pow(Q, sol.roots.gamma_neg) +
                    in.gain.nu_0 * Q + in.gain.nu_1;
  return {v0, v1};
}

DpThresholds dp_oracle(const SwitchingInputs& in, const DpGridSpec& grid) {
  check_inputs(in);
  if (grid.n_points < 16) throw ValidationError("dp_oracle: grid too small");
  if (!(grid.span > 1.0)) throw ValidationError("dp_oracle: span must be > 1");

  if (grid.steps_per_month < 1)
    throw ValidationError("dp_oracle: steps_per_month must be >= 1");

  const double q_star = single_threshold(in);
  const int n = grid.n_points;
  const double x_lo = std::log(q_star / grid.span);
  const double x_hi = std::log(q_star * grid.span);
  const double h = (x_hi - x_lo) / (n - 1);

  // Exact GBM log-step over one decision period: N(mu, sigma^2) cell masses.
  const double dt = 1.0 / grid.steps_per_month;
  const double mu = (in.gbm.eta - 0.5 * in.gbm.sigma * in.gbm.sigma) * dt;
  const double sigma = in.gbm.sigma * std::sqrt(dt);
  const int reach = static_cast<int>(std::ceil((8.0 * sigma + std::fabs(mu)) / h)) + 1;
  auto norm_cdf = [](double z) { return 0.5 * std::erfc(-z * 0.70710678118654752440); };
  std::vector<double> w(2 * reach + 1);
  double wsum = 0.0;
  for (int d = -reach; d <= reach; ++d) {
    const double lo = ((d - 0.5) * h - mu) / sigma;
    const double hi = ((d + 0.5) * h - mu) / sigma;
    w[d + reach] = norm_cdf(hi) - norm_cdf(lo);
    wsum += w[d + reach];
  }
  for (double& v : w) v /= wsum;

  const double beta = std::exp(-in.gbm.k * dt);
  const double D = in.activation_cost, K = in.deactivation_cost;

  std::vector<double> Q(n), flow1(n);
  for (int j = 0; j < n; ++j) {
    Q[j] = std::exp(x_lo + j * h);
    flow1[j] = (in.gain.delta_Q * Q[j] + in.gain.delta_C) * dt;  // flow0 is 0
  }

  std::vector<double> V0(n, 0.0), V1(n, 0.0), E0(n), E1(n), nV0(n), nV1(n);
  auto expectation = [&](const std::vector<double>& V, std::vector<double>& E) {
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int d = -reach; d <= reach; ++d) {
        int t = j + d;
        if (t < 0) t = 0;
        if (t >= n) t = n - 1;
        s += w[d + reach] * V[t];
      }
      E[j] = s;
    }
  };

  int iter = 0;
  for (; iter < grid.max_iterations; ++iter) {
    expectation(V0, E0);
    expectation(V1, E1);
    double diff = 0.0, scale = 1.0;
    for (int j = 0; j < n; ++j) {
      const double stay0 = beta * E0[j];
      const double go1 = -D + flow1[j] + beta * E1[j];
      const double stay1 = flow1[j] + beta * E1[j];
      const double go0 = -K + beta * E0[j];
      nV0[j] = std::max(stay0, go1);
      nV1[j] = std::max(stay1, go0);
      diff = std::max({diff, std::fabs(nV0[j] - V0[j]),
                       std::fabs(nV1[j] - V1[j])});
      scale = std::max({scale, std::fabs(nV0[j]), std::fabs(nV1[j])});
    }
    V0.swap(nV0);
    V1.swap(nV1);
    if (diff < grid.tol * scale) break;
  }
  if (iter >= grid.max_iterations)
    throw SolverError("dp_oracle: value iteration did not converge");

  expectation(V0, E0);
  expectation(V1, E1);
  DpThresholds out;
  out.iterations = iter + 1;
  out.Q_upper = Q[n - 1];
  int first_enter = n;
  for (int j = 0; j < n; ++j) {
    const bool enter = -D + flow1[j] + beta * E1[j] > beta * E0[j];
    if (enter && first_enter == n) {
      first_enter = j;
      out.Q_upper = Q[j];
    }
    if (!enter && first_enter < j) out.monotone_regions = false;
  }
  out.Q_lower = Q[0];
  bool in_exit_prefix = true;
  for (int j = 0; j < n; ++j) {
    const bool exit_to_fare = -K + beta * E0[j] > flow1[j] + beta * E1[j];
    if (exit_to_fare) {
      if (!in_exit_prefix) out.monotone_regions = false;
      out.Q_lower = Q[j];
    } else {
      in_exit_prefix = false;
    }
  }
  return out;
}

}  // namespace fareopt
