#pragma once

#include <string>
#include <vector>

namespace fareopt {

/// Operating stage of the corridor: fare charged everywhere (stage 0) or a
/// fare-free inner zone of length B (stage 1).
enum class Stage { FareBased = 0, FareFree = 1 };

enum class Mode { Bus, Auto };

/// Static corridor description: geometry, generalized-cost parameters,
/// operator cost structure and the equity group count. All money values are
/// $/day unless noted otherwise; times are hours; distances are miles.
struct CorridorScenario {
  double A = 50.0;       // corridor length, CBD to city boundary (mile)
  double Q_CBD = 1500.0; // potential demand density at the CBD (pax/mile/day)
  double psi = 0.5;      // logit scale
  double e_c = 1.0 / 70.0; // demand elasticity coefficient (1/$)

  double alpha_T = 20.0; // value of in-vehicle time ($/hr)
  double alpha_w = 20.0; // value of waiting time ($/hr)
  double alpha_S = 20.0; // value of access time ($/hr)
  double S = 0.1;        // access time to the nearest stop (hr)

  double C_f_a = 3.0;    // fixed auto cost, e.g. CBD parking ($/trip)
  double C_v_a = 0.5;    // variable auto cost ($/mile)
  double f = 5.0;        // transit fare outside the free zone ($/trip)

  double v_a = 30.0;     // auto speed (mile/hr)
  double v_b = 25.0;     // bus speed (mile/hr)

  double g_f = 10000.0;  // fixed transit operating cost ($/day)
  double g_v = 500.0;    // variable operating cost ($/vehicle/day)

  double e_0 = 5000.0;   // fixed fare-collection cost ($/day)
  double e_1 = 500.0;    // fare-collection cost per mile of charged route ($/mile)
  double e_2 = 0.1;      // fare-collection cost per trip ($/trip)

  double iota_f = 10000.0; // fixed fare-free administration cost ($/day)
  double iota_v = 10.0;    // variable administration cost ($/mile^theta)
  double theta = 2.0;      // administration cost exponent

  int n_groups = 50;     // equity demand groups along the corridor

  // When false, the stage-1 objective omits the administrative cost term.
  bool stage1_admin_term = true;

  /// Every invariant violation, one message per offending field.
  std::vector<std::string> violations() const;
  /// Throws ValidationError listing all violations at once.
  void validate() const;
};

/// One operating stage to evaluate: zone length, frequency and the fares in
/// force inside/outside the zone.
struct StagePolicy {
  Stage stage = Stage::FareBased;
  double B = 0.0;            // fare-free zone length (mile); 0 at stage 0
  double F = 1.0;            // transit frequency (vehicles/hr)
  double fare_inside = 0.0;  // fare for x < B ($/trip)
  double fare_outside = 0.0; // fare for x >= B ($/trip)

  static StagePolicy fare_based(double frequency, double fare);
  static StagePolicy fare_free(double zone_length, double frequency,
                               double fare_outside);

  double fare_at(double x) const {
    return x < B ? fare_inside : fare_outside;
  }
};

}  // namespace fareopt
