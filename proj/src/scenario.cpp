#include "fareopt/scenario.hpp"

#include <sstream>

#include "fareopt/errors.hpp"

namespace fareopt {

std::vector<std::string> CorridorScenario::violations() const {
  std::vector<std::string> v;
  auto req = [&v](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  req(A > 0.0, "A must be > 0 (corridor length)");
  req(Q_CBD >= 0.0, "Q_CBD must be >= 0");
  req(e_c > 0.0, "e_c must be > 0");
  req(psi >= 0.0, "psi must be >= 0");
  req(v_a > 0.0, "v_a must be > 0");
  req(v_b > 0.0, "v_b must be > 0");
  req(theta >= 1.0, "theta must be >= 1");
  req(n_groups >= 2, "n_groups must be >= 2");
  req(alpha_T >= 0.0, "alpha_T must be >= 0");
  req(alpha_w >= 0.0, "alpha_w must be >= 0");
  req(alpha_S >= 0.0, "alpha_S must be >= 0");
  req(S >= 0.0, "S must be >= 0");
  req(C_f_a >= 0.0, "C_f_a must be >= 0");
  req(C_v_a >= 0.0, "C_v_a must be >= 0");
  req(f >= 0.0, "f must be >= 0");
  req(g_f >= 0.0, "g_f must be >= 0");
  req(g_v >= 0.0, "g_v must be >= 0");
  req(e_0 >= 0.0, "e_0 must be >= 0");
  req(e_1 >= 0.0, "e_1 must be >= 0");
  req(e_2 >= 0.0, "e_2 must be >= 0");
  req(iota_f >= 0.0, "iota_f must be >= 0");
  req(iota_v >= 0.0, "iota_v must be >= 0");
  return v;
}

void CorridorScenario::validate() const {
  auto v = violations();
  if (v.empty()) return;
  std::ostringstream os;
  os << "invalid scenario:";
  for (const auto& m : v) os << "\n  - " << m;
  throw ValidationError(os.str());
}

StagePolicy StagePolicy::fare_based(double frequency, double fare) {
  if (frequency <= 0.0)
    throw ValidationError("StagePolicy: frequency must be > 0");
  if (fare < 0.0) throw ValidationError("StagePolicy: fare must be >= 0");
  StagePolicy p;
  p.stage = Stage::FareBased;
  p.B = 0.0;
  p.F = frequency;
  p.fare_inside = fare;
  p.fare_outside = fare;
  return p;
}

StagePolicy StagePolicy::fare_free(double zone_length, double frequency,
                                   double fare_outside) {
  if (frequency <= 0.0)
    throw ValidationError("StagePolicy: frequency must be > 0");
  if (zone_length < 0.0)
    throw ValidationError("StagePolicy: zone length must be >= 0");
  if (fare_outside < 0.0)
    throw ValidationError("StagePolicy: fare must be >= 0");
  StagePolicy p;
  p.stage = Stage::FareFree;
  p.B = zone_length;
  p.F = frequency;
  p.fare_inside = 0.0;
  p.fare_outside = fare_outside;
  return p;
}

}  // namespace fareopt
