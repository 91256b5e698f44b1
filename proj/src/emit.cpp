#include "fareopt/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fareopt/corridor.hpp"
#include "fareopt/errors.hpp"
#include "fareopt/welfare.hpp"

namespace fareopt {

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw ValidationError("cannot create output directory " + dir + ": " +
                          ec.message());
}

std::string write_csv(const std::string& dir, const std::string& name,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  ensure_out_dir(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << row[i];
    out << "\n";
  }
  out.flush();
  if (!out) throw ValidationError("failed writing " + path);
  return path;
}

std::string write_summary(const std::string& dir, const nlohmann::json& body) {
  ensure_out_dir(dir);
  const std::string path = dir + "/summary.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write " + path);
  out << body.dump(2) << "\n";
  out.flush();
  if (!out) throw ValidationError("failed writing " + path);
  return path;
}

nlohmann::json summary_envelope(const std::string& command,
                                const ScenarioConfig& cfg,
                                std::uint64_t seed) {
  nlohmann::json j;
  j["command"] = command;
  char hex[32];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(config_hash(cfg)));
  j["config_hash"] = hex;
  j["seed"] = seed;
  nlohmann::json assumed = nlohmann::json::object();
  for (const auto& [key, value] : cfg.assumed_fields()) assumed[key] = value;
  j["assumed_sources"] = assumed;
  return j;
}

std::string emit_welfare_surface(const std::string& dir,
                                 const std::vector<SurfacePoint>& surface) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(surface.size());
  for (const auto& p : surface)
    rows.push_back({csv_number(p.B), csv_number(p.F), csv_number(p.W)});
  return write_csv(dir, "welfare_surface.csv", {"B", "F", "W"}, rows);
}

namespace {

std::vector<double> profile_positions(const CorridorScenario& sc,
                                      const StagePolicy& pol) {
  std::vector<double> xs;
  const int n = 1000;
  xs.reserve(n + 3);
  for (int i = 0; i <= n; ++i) xs.push_back(sc.A * i / n);
  if (pol.stage == Stage::FareFree && pol.B > 0.0 && pol.B < sc.A) {
    // one-sided limits at the zone boundary
    xs.push_back(pol.B * (1.0 - 1e-12));
    xs.push_back(pol.B);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

std::string emit_mode_split_profile(const std::string& dir,
                                    const CorridorScenario& sc,
                                    const StagePolicy& pol) {
  std::vector<std::vector<std::string>> rows;
  for (double x : profile_positions(sc, pol)) {
    const ModeSplit ms = mode_split(sc, pol, x);
    rows.push_back({csv_number(x), csv_number(ms.pr_bus),
                    csv_number(ms.pr_auto),
                    csv_number(bus_cost(sc, pol, x)),
                    csv_number(auto_cost(sc, x))});
  }
  return write_csv(dir, "mode_split_profile.csv",
                   {"x", "pr_bus", "pr_auto", "bus_cost", "auto_cost"}, rows);
}

std::string emit_surplus_profile(const std::string& dir,
                                 const CorridorScenario& sc,
                                 const StagePolicy& pol) {
  std::vector<std::vector<std::string>> rows;
  for (double x : profile_positions(sc, pol)) {
    rows.push_back({csv_number(x),
                    csv_number(surplus_density(sc, pol, x, Mode::Bus)),
                    csv_number(surplus_density(sc, pol, x, Mode::Auto))});
  }
  return write_csv(dir, "surplus_profile.csv",
                   {"x", "surplus_bus", "surplus_auto"}, rows);
}

std::string emit_gini_vs_zone(const std::string& dir,
                              const std::vector<GiniRow>& rows_in) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rows_in.size());
  for (const auto& r : rows_in)
    rows.push_back({csv_number(r.fare), csv_number(r.B), csv_number(r.F),
                    csv_number(r.gini)});
  return write_csv(dir, "gini_vs_zone.csv", {"fare", "B", "F", "gini"}, rows);
}

std::string emit_lorenz(const std::string& dir,
                        const std::vector<LorenzRow>& rows_in) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rows_in.size());
  for (const auto& r : rows_in)
    rows.push_back({r.policy, csv_number(r.point.cum_demand_share),
                    csv_number(r.point.cum_surplus_share)});
  return write_csv(dir, "lorenz.csv",
                   {"policy", "cum_demand_share", "cum_surplus_share"}, rows);
}

std::string emit_benefit_scan(const std::string& dir,
                              const std::vector<EquityReport>& reports) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(reports.size());
  for (const auto& r : reports)
    rows.push_back({csv_number(r.mu), csv_number(r.B), csv_number(r.F),
                    csv_number(r.welfare_total), csv_number(r.sw_index),
                    csv_number(r.gini), csv_number(r.benefit),
                    r.feasible ? "1" : "0"});
  return write_csv(dir, "benefit_vs_zone.csv",
                   {"mu", "B", "F", "W1", "sw_index", "gini", "benefit",
                    "feasible"},
                   rows);
}

std::string emit_paths(const std::string& dir,
                       const std::vector<DemandPath>& paths,
                       const std::vector<double>& reference) {
  std::vector<std::string> header{"month"};
  for (std::size_t p = 0; p < paths.size(); ++p)
    header.push_back("path_" + std::to_string(p));
  header.push_back("reference");
  const std::size_t months = paths.empty() ? 0 : paths.front().q.size();
  std::vector<std::vector<std::string>> rows;
  rows.reserve(months);
  for (std::size_t t = 0; t < months; ++t) {
    std::vector<std::string> row{std::to_string(t)};
    for (const auto& p : paths) row.push_back(csv_number(p.q[t]));
    row.push_back(csv_number(t < reference.size() ? reference[t] : 0.0));
    rows.push_back(std::move(row));
  }
  return write_csv(dir, "paths.csv", header, rows);
}

std::string emit_thresholds(const std::string& dir,
                            const std::vector<ThresholdRow>& rows_in) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(rows_in.size());
  for (const auto& r : rows_in) {
    rows.push_back({r.regime, csv_number(r.solution.Q_upper),
                    csv_number(r.solution.Q_lower),
                    csv_number(r.solution.Q_star), csv_number(r.solution.Y0),
                    csv_number(r.solution.X1),
                    csv_number(r.solution.residual_norm),
                    r.has_dp ? csv_number(r.dp.Q_upper) : "",
                    r.has_dp ? csv_number(r.dp.Q_lower) : ""});
  }
  return write_csv(dir, "thresholds.csv",
                   {"regime", "Q_upper", "Q_lower", "Q_star", "Y0", "X1",
                    "residual_norm", "dp_Q_upper", "dp_Q_lower"},
                   rows);
}

namespace {

std::string period_list(const std::vector<ModePeriod>& periods, Stage mode) {
  std::ostringstream os;
  bool first = true;
  for (const auto& p : periods) {
    if (p.mode != mode) continue;
    if (!first) os << ";";
    os << p.start << "-" << p.end;
    first = false;
  }
  return os.str();
}

int period_count(const std::vector<ModePeriod>& periods, Stage mode) {
  int n = 0;
  for (const auto& p : periods)
    if (p.mode == mode) ++n;
  return n;
}

int period_months(const std::vector<ModePeriod>& periods, Stage mode) {
  int n = 0;
  for (const auto& p : periods)
    if (p.mode == mode) n += p.end - p.start;
  return n;
}

}  // namespace

std::string emit_policy_outcomes(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::vector<PolicyOutcome>>>&
        per_regime) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& [regime, outcomes] : per_regime) {
    for (const auto& o : outcomes) {
      const auto& pd = o.reference_periods;
      rows.push_back({regime,
                      o.policy.label(),
                      std::to_string(o.rank),
                      csv_number(o.mean_payoff),
                      csv_number(o.stdev_payoff),
                      csv_number(o.mean_switch_count),
                      csv_number(o.policy.q_upper),
                      csv_number(o.policy.q_lower),
                      csv_number(o.policy.q_star),
                      std::to_string(period_count(pd, Stage::FareBased)),
                      std::to_string(period_count(pd, Stage::FareFree)),
                      std::to_string(period_months(pd, Stage::FareBased)),
                      std::to_string(period_months(pd, Stage::FareFree)),
                      period_list(pd, Stage::FareBased),
                      period_list(pd, Stage::FareFree)});
    }
  }
  return write_csv(
      dir, "policy_outcomes.csv",
      {"regime", "policy", "rank", "mean_payoff", "stdev_payoff",
       "mean_switches", "q_upper", "q_lower", "q_star", "fare_based_periods",
       "fare_free_periods", "fare_based_months", "fare_free_months",
       "fare_based_timeline", "fare_free_timeline"},
      rows);
}

}  // namespace fareopt
