#pragma once

#include <string>
#include <vector>

#include "fareopt/config.hpp"
#include "fareopt/equity.hpp"
#include "fareopt/policy_sim.hpp"
#include "fareopt/static_optimizer.hpp"

#include "json.hpp"

namespace fareopt {

/// Full-precision, locale-free number formatting shared by all emitters.
std::string csv_number(double v);

void ensure_out_dir(const std::string& dir);

/// Writes one CSV with a fixed header; every cell is already formatted.
/// Returns the file path. Identical inputs produce byte-identical files.
std::string write_csv(const std::string& dir, const std::string& name,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

std::string write_summary(const std::string& dir, const nlohmann::json& body);

/// Common summary envelope: command, config hash, seed and the
/// assumed-provenance fields so non-published values stay visible.
nlohmann::json summary_envelope(const std::string& command,
                                const ScenarioConfig& cfg,
                                std::uint64_t seed);

std::string emit_welfare_surface(const std::string& dir,
                                 const std::vector<SurfacePoint>& surface);

/// Mode split and generalized costs along the corridor; one-sided rows are
/// inserted at the zone boundary so the fare jump survives in the data.
std::string emit_mode_split_profile(const std::string& dir,
                                    const CorridorScenario& sc,
                                    const StagePolicy& pol);

std::string emit_surplus_profile(const std::string& dir,
                                 const CorridorScenario& sc,
                                 const StagePolicy& pol);

struct GiniRow {
  double fare = 0.0;
  double B = 0.0;
  double F = 0.0;
  double gini = 0.0;
};
std::string emit_gini_vs_zone(const std::string& dir,
                              const std::vector<GiniRow>& rows);

struct LorenzRow {
  std::string policy;
  LorenzPoint point;
};
std::string emit_lorenz(const std::string& dir,
                        const std::vector<LorenzRow>& rows);

std::string emit_benefit_scan(const std::string& dir,
                              const std::vector<EquityReport>& reports);

std::string emit_paths(const std::string& dir,
                       const std::vector<DemandPath>& paths,
                       const std::vector<double>& reference);

struct ThresholdRow {
  std::string regime;
  SwitchingSolution solution;
  bool has_dp = false;
  DpThresholds dp;
};
std::string emit_thresholds(const std::string& dir,
                            const std::vector<ThresholdRow>& rows);

std::string emit_policy_outcomes(
    const std::string& dir,
    const std::vector<std::pair<std::string, std::vector<PolicyOutcome>>>&
        per_regime);

}  // namespace fareopt
