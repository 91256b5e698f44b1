#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fareopt/demand_process.hpp"
#include "fareopt/policy_sim.hpp"
#include "fareopt/scenario.hpp"
#include "fareopt/static_optimizer.hpp"

namespace fareopt {

/// Provenance of a scenario value: published baseline calibration, a
/// documented assumption of this artifact, or a user override.
enum class Source { Baseline, Assumed, User };

std::string to_string(Source s);

struct BenefitSettings {
  double mu = 0.5;
  double beta_min = 0.0;
  double beta_max = 1.0;
  double B_step = 0.1;
  bool freeze_frequency = false;
};

struct SimSettings {
  int months = 42;
  int paths = 50;
  std::uint64_t seed = 20240901;
  PeriodPath period_path = PeriodPath::Mean;
};

/// Everything a run needs, parsed from one flat key-value file with
/// sections. Unknown keys are rejected; validation reports every violation.
struct ScenarioConfig {
  CorridorScenario scenario;
  GbmParams gbm;  // Q0 mirrors scenario.Q_CBD
  double D = 5000.0;  // activation cost ($)
  double K = 5000.0;  // deactivation cost ($)
  SearchSpec search;
  BenefitSettings benefit;
  SimSettings sim;
  double ridership_scale = 1.0;  // boardings -> CBD demand density

  // Effective provenance per tracked "section.key".
  std::map<std::string, Source> sources;

  /// Tracked fields whose effective source is `assumed`, for echoing into
  /// summaries.
  std::map<std::string, double> assumed_fields() const;
};

ScenarioConfig load_config(const std::string& path);

/// Canonical text form; load(serialize(c)) reproduces c exactly.
std::string serialize(const ScenarioConfig& config);

/// FNV-1a over the canonical serialization.
std::uint64_t config_hash(const ScenarioConfig& config);

/// Monthly ridership observations, consecutive months, positive boardings.
struct RidershipSeries {
  std::vector<std::string> month;  // "YYYY-MM"
  std::vector<double> boardings;
};

/// CSV with header `month,boardings`; every malformed row is reported with
/// its line number.
RidershipSeries load_ridership(const std::string& path);

}  // namespace fareopt
