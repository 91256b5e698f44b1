#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fareopt/config.hpp"
#include "fareopt/corridor.hpp"
#include "fareopt/demand_process.hpp"
#include "fareopt/emit.hpp"
#include "fareopt/equity.hpp"
#include "fareopt/errors.hpp"
#include "fareopt/policy_sim.hpp"
#include "fareopt/real_options.hpp"
#include "fareopt/static_optimizer.hpp"
#include "fareopt/welfare.hpp"

namespace {

using nlohmann::json;
using namespace fareopt;

struct GlobalOpts {
  std::string out_dir = "out";
  bool quiet = false;
  std::optional<std::uint64_t> seed_override;
};

std::uint64_t effective_seed(const GlobalOpts& g, const ScenarioConfig& cfg) {
  return g.seed_override ? *g.seed_override : cfg.sim.seed;
}

void say(const GlobalOpts& g, const std::string& msg) {
  if (!g.quiet) std::cout << msg << "\n";
}

int run_static_opt(const GlobalOpts& g, const std::string& config_path,
                   int stage) {
  const ScenarioConfig cfg = load_config(config_path);
  json summary = summary_envelope("static-opt", cfg, effective_seed(g, cfg));

  if (stage != 1) {
    const OptimumResult r0 = optimize_stage0(cfg.scenario, cfg.search);
    summary["stage0"] = {{"F_star", r0.F_star},
                         {"W_star", r0.W_star},
                         {"boundary_optimum", r0.boundary_optimum}};
    say(g, "stage 0: F* = " + std::to_string(r0.F_star) +
               ", W* = " + std::to_string(r0.W_star));
    if (stage == 0) emit_welfare_surface(g.out_dir, r0.surface);
  }
  if (stage != 0) {
    const OptimumResult r1 = optimize_stage1(cfg.scenario, cfg.search);
    summary["stage1"] = {{"B_star", r1.B_star},
                         {"F_star", r1.F_star},
                         {"W_star", r1.W_star},
                         {"boundary_optimum", r1.boundary_optimum}};
    say(g, "stage 1: B* = " + std::to_string(r1.B_star) +
               ", F* = " + std::to_string(r1.F_star) +
               ", W* = " + std::to_string(r1.W_star));
    emit_welfare_surface(g.out_dir, r1.surface);
    const StagePolicy opt =
        StagePolicy::fare_free(r1.B_star, r1.F_star, cfg.scenario.f);
    emit_mode_split_profile(g.out_dir, cfg.scenario, opt);
    emit_surplus_profile(g.out_dir, cfg.scenario, opt);
  }
  write_summary(g.out_dir, summary);
  return 0;
}

int run_equity(const GlobalOpts& g, const std::string& config_path,
               const std::vector<double>& fares,
               const std::vector<double>& mus) {
  const ScenarioConfig cfg = load_config(config_path);
  const CorridorScenario& sc = cfg.scenario;
  json summary = summary_envelope("equity", cfg, effective_seed(g, cfg));

  // Zone-length sweep of the Gini index for each fare level, frequency
  // re-optimized per length.
  std::vector<GiniRow> gini_rows;
  const int nb = static_cast<int>(sc.A / cfg.benefit.B_step + 1e-9) + 1;
  for (double fare : fares) {
    CorridorScenario fsc = sc;
    fsc.f = fare;
    for (int i = 0; i < nb; ++i) {
      const double B = std::min(sc.A, i * cfg.benefit.B_step);
      GiniRow row;
      row.fare = fare;
      row.B = B;
      row.F = optimize_frequency_for_B(fsc, cfg.search, B);
      const auto groups =
          group_surpluses(fsc, StagePolicy::fare_free(B, row.F, fsc.f));
      std::vector<double> vals;
      vals.reserve(groups.size());
      for (const auto& gr : groups) vals.push_back(gr.mean_surplus);
      row.gini = gini(vals);
      gini_rows.push_back(row);
    }
  }
  emit_gini_vs_zone(g.out_dir, gini_rows);

  // Lorenz curves of the three reference designs.
  const OptimumResult opt0 = optimize_stage0(sc, cfg.search);
  const OptimumResult opt1 = optimize_stage1(sc, cfg.search);
  const double f_full = optimize_frequency_for_B(sc, cfg.search, sc.A);
  std::vector<LorenzRow> lorenz_rows;
  json ginis = json::object();
  auto add_lorenz = [&](const std::string& label, const StagePolicy& pol) {
    const auto groups = group_surpluses(sc, pol);
    std::vector<double> vals, wts;
    for (const auto& gr : groups) {
      vals.push_back(gr.mean_surplus);
      wts.push_back(gr.segment_demand);
    }
    for (const auto& pt : lorenz_curve(vals, wts))
      lorenz_rows.push_back({label, pt});
    ginis[label] = gini(vals);
  };
  add_lorenz("fare_based", StagePolicy::fare_based(opt0.F_star, sc.f));
  add_lorenz("optimized_zone",
             StagePolicy::fare_free(opt1.B_star, opt1.F_star, sc.f));
  add_lorenz("fare_free_corridor", StagePolicy::fare_free(sc.A, f_full, sc.f));
  emit_lorenz(g.out_dir, lorenz_rows);
  summary["gini"] = ginis;

  // Benefit scans for the requested equity weights.
  std::vector<EquityReport> all_reports;
  json benefit = json::object();
  for (double mu : mus) {
    const BenefitOptimum bo =
        optimize_benefit(sc, cfg.search, mu, cfg.benefit.beta_min,
                         cfg.benefit.beta_max, cfg.benefit.B_step,
                         cfg.benefit.freeze_frequency);
    all_reports.insert(all_reports.end(), bo.scan.begin(), bo.scan.end());
    benefit[csv_number(mu)] = {{"B_star", bo.B_star},
                               {"F_star", bo.F_star},
                               {"G_star", bo.G_star},
                               {"welfare_B_star", bo.welfare_optimum.B_star}};
    say(g, "mu = " + std::to_string(mu) +
               ": benefit-optimal B = " + std::to_string(bo.B_star));
  }
  emit_benefit_scan(g.out_dir, all_reports);
  summary["benefit"] = benefit;
  write_summary(g.out_dir, summary);
  return 0;
}

int run_calibrate(const GlobalOpts& g, const std::string& ridership_path,
                  const std::optional<std::string>& config_path) {
  const RidershipSeries series = load_ridership(ridership_path);
  const CalibrationResult cal = calibrate(series.boardings);

  json summary;
  summary["command"] = "calibrate";
  summary["n_returns"] = cal.n_returns;
  summary["eta"] = cal.eta;
  summary["eta_ci"] = {cal.eta_lo, cal.eta_hi};
  summary["sigma"] = cal.sigma;
  summary["sigma_ci"] = {cal.sigma_lo, cal.sigma_hi};
  if (config_path) {
    const ScenarioConfig cfg = load_config(*config_path);
    const json env = summary_envelope("calibrate", cfg, effective_seed(g, cfg));
    summary["config_hash"] = env["config_hash"];
    summary["assumed_sources"] = env["assumed_sources"];
    summary["q0_implied"] = series.boardings.back() * cfg.ridership_scale;
  }
  say(g, "eta = " + std::to_string(cal.eta) + " [" +
             std::to_string(cal.eta_lo) + ", " + std::to_string(cal.eta_hi) +
             "] per month");
  say(g, "sigma = " + std::to_string(cal.sigma) + " [" +
             std::to_string(cal.sigma_lo) + ", " +
             std::to_string(cal.sigma_hi) + "] per month");
  write_summary(g.out_dir, summary);
  return 0;
}

int run_simulate(const GlobalOpts& g, const std::string& config_path,
                 std::optional<int> months, std::optional<int> n_paths) {
  const ScenarioConfig cfg = load_config(config_path);
  const std::uint64_t seed = effective_seed(g, cfg);
  const int T = months.value_or(cfg.sim.months);
  const int n = n_paths.value_or(cfg.sim.paths);
  const auto paths = simulate_paths(cfg.gbm, T, n, seed);

  std::vector<double> mean(T + 1, 0.0);
  for (const auto& p : paths)
    for (int t = 0; t <= T; ++t) mean[t] += p.q[t];
  for (double& v : mean) v /= static_cast<double>(n);
  emit_paths(g.out_dir, paths, mean);

  json summary = summary_envelope("simulate", cfg, seed);
  summary["months"] = T;
  summary["paths"] = n;
  summary["expected_final"] = expected_demand(cfg.gbm, T);
  write_summary(g.out_dir, summary);
  say(g, "wrote " + std::to_string(n) + " paths over " + std::to_string(T) +
             " months");
  return 0;
}

json switching_json(const SwitchingSolution& s) {
  return {{"Q_upper", s.Q_upper},   {"Q_lower", s.Q_lower},
          {"Q_star", s.Q_star},     {"Y0", s.Y0},
          {"X1", s.X1},             {"residual_norm", s.residual_norm},
          {"gamma_pos", s.roots.gamma_pos},
          {"gamma_neg", s.roots.gamma_neg}};
}

int run_thresholds(const GlobalOpts& g, const std::string& config_path,
                   const std::string& regime_name, bool no_switching_cost,
                   int dp_points, int dp_steps) {
  const ScenarioConfig cfg = load_config(config_path);
  const CorridorScenario& sc = cfg.scenario;
  const Regime regime =
      regime_name == "equity" ? Regime::Equity : Regime::Welfare;
  json summary = summary_envelope("thresholds", cfg, effective_seed(g, cfg));
  summary["regime"] = regime_name;

  const OptimumResult opt0 = optimize_stage0(sc, cfg.search);
  double B = sc.A, F1 = 0.0;
  if (regime == Regime::Welfare) {
    const OptimumResult opt1 = optimize_stage1(sc, cfg.search);
    B = opt1.B_star;
    F1 = opt1.F_star;
  } else {
    F1 = optimize_frequency_for_B(sc, cfg.search, sc.A);
  }
  const auto c0 = welfare_coefficients(sc, StagePolicy::fare_based(opt0.F_star, sc.f));
  const auto c1 = welfare_coefficients(sc, StagePolicy::fare_free(B, F1, sc.f));

  SwitchingInputs in;
  in.gain = gain_coefficients(c0, c1, cfg.gbm.k, cfg.gbm.eta);
  in.gbm = cfg.gbm;
  in.activation_cost = cfg.D;
  in.deactivation_cost = cfg.K;

  summary["B"] = B;
  summary["F0"] = opt0.F_star;
  summary["F1"] = F1;
  summary["gain"] = {{"delta_Q", in.gain.delta_Q},
                     {"delta_C", in.gain.delta_C},
                     {"nu_0", in.gain.nu_0},
                     {"nu_1", in.gain.nu_1}};

  if (no_switching_cost) {
    const double q_star = single_threshold(in);
    summary["Q_star"] = q_star;
    say(g, "Q* = " + std::to_string(q_star));
    write_summary(g.out_dir, summary);
    return 0;
  }

  const SwitchingSolution sol = solve_thresholds(in);
  summary["switching"] = switching_json(sol);

  DpGridSpec grid;
  grid.n_points = dp_points;
  grid.steps_per_month = dp_steps;
  const DpThresholds dp = dp_oracle(in, grid);
  summary["dp"] = {{"Q_upper", dp.Q_upper},
                   {"Q_lower", dp.Q_lower},
                   {"iterations", dp.iterations},
                   {"rel_diff_upper", dp.Q_upper / sol.Q_upper - 1.0},
                   {"rel_diff_lower", dp.Q_lower / sol.Q_lower - 1.0}};

  emit_thresholds(g.out_dir, {{regime_name, sol, true, dp}});
  write_summary(g.out_dir, summary);
  say(g, "Q_upper = " + std::to_string(sol.Q_upper) +
             ", Q_lower = " + std::to_string(sol.Q_lower) +
             ", Q* = " + std::to_string(sol.Q_star));
  say(g, "dp check: Q_upper = " + std::to_string(dp.Q_upper) +
             ", Q_lower = " + std::to_string(dp.Q_lower));
  return 0;
}

int run_policy_eval(const GlobalOpts& g, const std::string& config_path,
                    std::optional<int> n_paths, const std::string& regimes) {
  const ScenarioConfig cfg = load_config(config_path);
  const std::uint64_t seed = effective_seed(g, cfg);
  const int n = n_paths.value_or(cfg.sim.paths);
  json summary = summary_envelope("policy-eval", cfg, seed);

  std::vector<std::pair<std::string, std::vector<PolicyOutcome>>> per_regime;
  std::vector<ThresholdRow> threshold_rows;
  std::vector<Regime> to_run;
  if (regimes == "welfare" || regimes == "both") to_run.push_back(Regime::Welfare);
  if (regimes == "equity" || regimes == "both") to_run.push_back(Regime::Equity);

  std::vector<DemandPath> emitted_paths;
  std::vector<double> emitted_reference;
  for (Regime regime : to_run) {
    const RegimeReport rep =
        regime_report(cfg.scenario, cfg.gbm, cfg.D, cfg.K, cfg.search, regime,
                      cfg.sim.months, n, seed, cfg.sim.period_path);
    const std::string name = regime == Regime::Welfare ? "welfare" : "equity";
    per_regime.emplace_back(name, rep.outcomes);
    threshold_rows.push_back({name, rep.switching, false, {}});

    json rj;
    rj["B"] = rep.B;
    rj["F0"] = rep.F0;
    rj["F1"] = rep.F1;
    rj["W0"] = rep.W0;
    rj["W1"] = rep.W1;
    rj["switching"] = switching_json(rep.switching);
    json ranking = json::array();
    for (const auto& o : rep.outcomes)
      ranking.push_back({{"policy", o.policy.label()},
                         {"rank", o.rank},
                         {"mean_payoff", o.mean_payoff},
                         {"mean_switches", o.mean_switch_count}});
    rj["ranking"] = ranking;
    summary[name] = rj;

    if (emitted_paths.empty()) {
      emitted_paths = rep.paths;
      emitted_reference = rep.reference_path;
    }
    say(g, name + ": Q_upper = " + std::to_string(rep.switching.Q_upper) +
               ", Q_lower = " + std::to_string(rep.switching.Q_lower) +
               ", Q* = " + std::to_string(rep.switching.Q_star));
  }

  emit_policy_outcomes(g.out_dir, per_regime);
  emit_thresholds(g.out_dir, threshold_rows);
  emit_paths(g.out_dir, emitted_paths, emitted_reference);
  write_summary(g.out_dir, summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "fareopt: fare-free transit zone design and switching-time analysis"};
  app.require_subcommand(1);

  GlobalOpts g;
  std::uint64_t seed_value = 0;
  app.add_option("--out", g.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--quiet", g.quiet, "suppress progress output");
  auto* seed_opt =
      app.add_option("--seed", seed_value, "override the config seed");

  std::string config_path, ridership_path;
  int stage = -1;
  std::vector<double> fares{0.0, 2.0, 5.0, 8.0};
  std::vector<double> mus{0.5};
  std::optional<std::string> calibrate_config;
  int months = -1, paths = -1;
  std::string regime = "welfare", regimes = "both";
  bool no_switching_cost = false;
  int dp_points = 2000;
  int dp_steps = 1;

  // Global flags remain valid after the subcommand name.
  auto* cmd_static = app.add_subcommand("static-opt", "optimal design search");
  cmd_static->fallthrough();
  cmd_static->add_option("--config", config_path, "scenario config file")
      ->required();
  cmd_static->add_option("--stage", stage, "restrict to one stage (0 or 1)")
      ->check(CLI::Range(0, 1));

  auto* cmd_equity =
      app.add_subcommand("equity", "Gini, Lorenz and benefit-index scans");
  cmd_equity->fallthrough();
  cmd_equity->add_option("--config", config_path, "scenario config file")
      ->required();
  cmd_equity->add_option("--fares", fares, "fare levels for the Gini sweep")
      ->delimiter(',')
      ->capture_default_str();
  cmd_equity->add_option("--mu", mus, "equity weights for the benefit index")
      ->delimiter(',')
      ->capture_default_str();

  auto* cmd_cal = app.add_subcommand("calibrate", "demand process estimation");
  cmd_cal->fallthrough();
  cmd_cal->add_option("--ridership", ridership_path, "monthly boardings CSV")
      ->required();
  cmd_cal->add_option("--config", calibrate_config,
                      "optional config for the boardings-to-density scale");

  auto* cmd_sim = app.add_subcommand("simulate", "demand path simulation");
  cmd_sim->fallthrough();
  cmd_sim->add_option("--config", config_path, "scenario config file")
      ->required();
  cmd_sim->add_option("--months", months, "planning horizon in months");
  cmd_sim->add_option("--paths", paths, "number of simulated paths");

  auto* cmd_thr =
      app.add_subcommand("thresholds", "switching threshold analysis");
  cmd_thr->fallthrough();
  cmd_thr->add_option("--config", config_path, "scenario config file")
      ->required();
  cmd_thr->add_option("--regime", regime, "welfare | equity")
      ->check(CLI::IsMember({"welfare", "equity"}))
      ->capture_default_str();
  cmd_thr->add_flag("--no-switching-cost", no_switching_cost,
                    "report only the zero-cost threshold");
  cmd_thr->add_option("--dp-points", dp_points, "grid size of the DP check")
      ->capture_default_str();
  cmd_thr->add_option("--dp-steps", dp_steps,
                      "DP decisions per month; finer clocks approach the "
                      "continuous-time thresholds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* cmd_pol =
      app.add_subcommand("policy-eval", "switching policy comparison");
  cmd_pol->fallthrough();
  cmd_pol->add_option("--config", config_path, "scenario config file")
      ->required();
  cmd_pol->add_option("--paths", paths, "number of simulated paths");
  cmd_pol->add_option("--regime", regimes, "welfare | equity | both")
      ->check(CLI::IsMember({"welfare", "equity", "both"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*seed_opt) g.seed_override = seed_value;

  try {
    if (cmd_static->parsed()) return run_static_opt(g, config_path, stage);
    if (cmd_equity->parsed()) return run_equity(g, config_path, fares, mus);
    if (cmd_cal->parsed())
      return run_calibrate(g, ridership_path, calibrate_config);
    if (cmd_sim->parsed())
      return run_simulate(g, config_path,
                          months >= 0 ? std::optional<int>(months)
                                      : std::nullopt,
                          paths >= 0 ? std::optional<int>(paths)
                                     : std::nullopt);
    if (cmd_thr->parsed())
      return run_thresholds(g, config_path, regime, no_switching_cost,
                            dp_points, dp_steps);
    if (cmd_pol->parsed())
      return run_policy_eval(g, config_path,
                             paths >= 0 ? std::optional<int>(paths)
                                        : std::nullopt,
                             regimes);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
