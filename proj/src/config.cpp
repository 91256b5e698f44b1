#include "fareopt/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "fareopt/errors.hpp"

namespace fareopt {

std::string to_string(Source s) {
  switch (s) {
    case Source::Baseline: return "baseline";
    case Source::Assumed: return "assumed";
    case Source::User: return "user";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Numeric literal, optionally a rational like `1/70`.
std::optional<double> parse_number(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) return std::nullopt;
  const std::size_t slash = t.find('/');
  auto to_double = [](const std::string& s) -> std::optional<double> {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used])))
        ++used;
      if (used != s.size()) return std::nullopt;
      return v;
    } catch (...) {
      return std::nullopt;
    }
  };
  if (slash == std::string::npos) return to_double(t);
  auto num = to_double(t.substr(0, slash));
  auto den = to_double(t.substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

std::optional<bool> parse_bool(const std::string& text) {
  const std::string t = trim(text);
  if (t == "true") return true;
  if (t == "false") return false;
  return std::nullopt;
}

enum class FieldClass { Baseline, Assumed, Setting };

struct FieldSpec {
  std::string section;
  std::string key;
  std::string unit;  // empty when dimensionless
  FieldClass cls = FieldClass::Setting;
  bool required = false;
  // Parses and stores the value; returns an error message on failure.
  std::function<std::string(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
  // Documented default of provenance-tracked fields, for user-override
  // detection.
  std::function<double(const ScenarioConfig&)> numeric;
  double documented_default = 0.0;

  std::string id() const { return section + "." + key; }
};

FieldSpec number_field(std::string section, std::string key, std::string unit,
                       FieldClass cls, bool required,
                       std::function<double&(ScenarioConfig&)> ref,
                       double documented_default) {
  FieldSpec f;
  f.section = std::move(section);
  f.key = std::move(key);
  f.unit = std::move(unit);
  f.cls = cls;
  f.required = required;
  f.documented_default = documented_default;
  f.set = [ref](ScenarioConfig& c, const std::string& text) -> std::string {
    auto v = parse_number(text);
    if (!v) return "expected a number, got '" + text + "'";
    ref(c) = *v;
    return "";
  };
  f.get = [ref](const ScenarioConfig& c) {
    return format_g17(ref(const_cast<ScenarioConfig&>(c)));
  };
  f.numeric = [ref](const ScenarioConfig& c) {
    return ref(const_cast<ScenarioConfig&>(c));
  };
  return f;
}

FieldSpec int_field(std::string section, std::string key, FieldClass cls,
                    bool required, std::function<int&(ScenarioConfig&)> ref,
                    int documented_default) {
  FieldSpec f;
  f.section = std::move(section);
  f.key = std::move(key);
  f.cls = cls;
  f.required = required;
  f.documented_default = documented_default;
  f.set = [ref](ScenarioConfig& c, const std::string& text) -> std::string {
    auto v = parse_number(text);
    if (!v || *v != std::floor(*v)) return "expected an integer, got '" + text + "'";
    ref(c) = static_cast<int>(*v);
    return "";
  };
  f.get = [ref](const ScenarioConfig& c) {
    return std::to_string(ref(const_cast<ScenarioConfig&>(c)));
  };
  f.numeric = [ref](const ScenarioConfig& c) {
    return static_cast<double>(ref(const_cast<ScenarioConfig&>(c)));
  };
  return f;
}

FieldSpec bool_field(std::string section, std::string key,
                     std::function<bool&(ScenarioConfig&)> ref) {
  FieldSpec f;
  f.section = std::move(section);
  f.key = std::move(key);
  f.cls = FieldClass::Setting;
  f.set = [ref](ScenarioConfig& c, const std::string& text) -> std::string {
    auto v = parse_bool(text);
    if (!v) return "expected true or false, got '" + text + "'";
    ref(c) = *v;
    return "";
  };
  f.get = [ref](const ScenarioConfig& c) {
    return ref(const_cast<ScenarioConfig&>(c)) ? "true" : "false";
  };
  return f;
}

std::vector<FieldSpec> schema() {
  using C = ScenarioConfig;
  std::vector<FieldSpec> s;
  auto num = [&s](const char* sec, const char* key, const char* unit,
                  FieldClass cls, bool required,
                  std::function<double&(C&)> ref, double def) {
    s.push_back(number_field(sec, key, unit, cls, required, std::move(ref), def));
  };

  num("corridor", "A", "mile", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.A; }, 50.0);
  num("corridor", "Q_CBD", "pax/mile/day", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.Q_CBD; }, 1500.0);
  num("corridor", "psi", "", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.psi; }, 0.5);
  num("corridor", "e_c", "1/$", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.e_c; }, 1.0 / 70.0);
  s.push_back(int_field("corridor", "n_groups", FieldClass::Baseline, true,
                        [](C& c) -> int& { return c.scenario.n_groups; }, 50));

  num("time_values", "alpha_T", "$/hr", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.alpha_T; }, 20.0);
  num("time_values", "alpha_w", "$/hr", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.alpha_w; }, 20.0);
  num("time_values", "alpha_S", "$/hr", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.alpha_S; }, 20.0);
  num("time_values", "S", "hr", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.S; }, 0.1);

  num("auto", "C_f_a", "$/trip", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.C_f_a; }, 3.0);
  num("auto", "C_v_a", "$/mile", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.C_v_a; }, 0.5);
  num("auto", "v_a", "mile/hr", FieldClass::Assumed, true,
      [](C& c) -> double& { return c.scenario.v_a; }, 30.0);

  num("transit", "f", "$/trip", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.f; }, 5.0);
  num("transit", "v_b", "mile/hr", FieldClass::Assumed, true,
      [](C& c) -> double& { return c.scenario.v_b; }, 25.0);
  num("transit", "g_f", "$/day", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.g_f; }, 10000.0);
  num("transit", "g_v", "$/vehicle/day", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.g_v; }, 500.0);

  num("fare_collection", "e_0", "$/day", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.e_0; }, 5000.0);
  num("fare_collection", "e_1", "$/mile", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.e_1; }, 500.0);
  num("fare_collection", "e_2", "$/trip", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.e_2; }, 0.1);

  num("administration", "iota_f", "$/day", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.iota_f; }, 10000.0);
  num("administration", "iota_v", "$/mile^theta", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.iota_v; }, 10.0);
  num("administration", "theta", "", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.scenario.theta; }, 2.0);

  num("demand_process", "eta", "1/month", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.gbm.eta; }, 0.0116);
  num("demand_process", "sigma", "1/month", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.gbm.sigma; }, 0.1347);
  num("demand_process", "k", "1/month", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.gbm.k; }, 0.02);

  num("switching", "D", "$", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.D; }, 5000.0);
  num("switching", "K", "$", FieldClass::Baseline, true,
      [](C& c) -> double& { return c.K; }, 5000.0);

  num("search", "F_min", "vehicles/hr", FieldClass::Setting, false,
      [](C& c) -> double& { return c.search.F_range.min; }, 1.0);
  num("search", "F_max", "vehicles/hr", FieldClass::Setting, false,
      [](C& c) -> double& { return c.search.F_range.max; }, 40.0);
  num("search", "F_step", "vehicles/hr", FieldClass::Setting, false,
      [](C& c) -> double& { return c.search.F_range.step; }, 1.0);
  num("search", "B_step", "mile", FieldClass::Setting, false,
      [](C& c) -> double& { return c.search.B_range.step; }, 1.0);
  s.push_back(int_field("search", "refinements", FieldClass::Setting, false,
                        [](C& c) -> int& { return c.search.refinements; }, 2));

  num("benefit", "mu", "", FieldClass::Setting, false,
      [](C& c) -> double& { return c.benefit.mu; }, 0.5);
  num("benefit", "beta_min", "", FieldClass::Setting, false,
      [](C& c) -> double& { return c.benefit.beta_min; }, 0.0);
  num("benefit", "beta_max", "", FieldClass::Setting, false,
      [](C& c) -> double& { return c.benefit.beta_max; }, 1.0);
  num("benefit", "B_step", "mile", FieldClass::Setting, false,
      [](C& c) -> double& { return c.benefit.B_step; }, 0.1);
  s.push_back(bool_field("benefit", "freeze_frequency",
                         [](C& c) -> bool& { return c.benefit.freeze_frequency; }));

  s.push_back(int_field("simulation", "months", FieldClass::Setting, false,
                        [](C& c) -> int& { return c.sim.months; }, 42));
  s.push_back(int_field("simulation", "paths", FieldClass::Setting, false,
                        [](C& c) -> int& { return c.sim.paths; }, 50));
  {
    FieldSpec f;
    f.section = "simulation";
    f.key = "seed";
    f.set = [](C& c, const std::string& text) -> std::string {
      try {
        c.sim.seed = std::stoull(trim(text));
        return "";
      } catch (...) {
        return "expected an unsigned integer, got '" + text + "'";
      }
    };
    f.get = [](const C& c) { return std::to_string(c.sim.seed); };
    s.push_back(f);
  }
  {
    FieldSpec f;
    f.section = "simulation";
    f.key = "period_path";
    f.set = [](C& c, const std::string& text) -> std::string {
      const std::string t = trim(text);
      if (t == "mean") c.sim.period_path = PeriodPath::Mean;
      else if (t == "first") c.sim.period_path = PeriodPath::First;
      else return "expected mean or first, got '" + t + "'";
      return "";
    };
    f.get = [](const C& c) {
      return c.sim.period_path == PeriodPath::Mean ? std::string("mean")
                                                   : std::string("first");
    };
    s.push_back(f);
  }

  s.push_back(bool_field("options", "stage1_admin_term",
                         [](C& c) -> bool& { return c.scenario.stage1_admin_term; }));
  num("options", "ridership_scale", "(pax/mile/day)/boarding",
      FieldClass::Assumed, false,
      [](C& c) -> double& { return c.ridership_scale; }, 1.0);

  return s;
}

struct RawEntry {
  std::string value;
  std::string unit_note;
  std::string source_note;
  int line = 0;
  bool used = false;
};

// Comment annotations: `# unit: X; source: Y; free text`.
void parse_annotations(const std::string& comment, RawEntry& e) {
  std::stringstream ss(comment);
  std::string part;
  while (std::getline(ss, part, ';')) {
    const std::string p = trim(part);
    if (p.rfind("unit:", 0) == 0) e.unit_note = trim(p.substr(5));
    if (p.rfind("source:", 0) == 0) e.source_note = trim(p.substr(7));
  }
}

}  // namespace

std::map<std::string, double> ScenarioConfig::assumed_fields() const {
  std::map<std::string, double> out;
  for (const auto& f : schema()) {
    if (!f.numeric) continue;
    auto it = sources.find(f.id());
    if (it != sources.end() && it->second == Source::Assumed)
      out[f.id()] = f.numeric(*this);
  }
  return out;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);

  std::map<std::string, RawEntry> entries;
  std::vector<std::string> errors;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string comment;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) {
      comment = line.substr(hash + 1);
      line = line.substr(0, hash);
    }
    const std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') {
        errors.push_back("line " + std::to_string(line_no) +
                         ": malformed section header");
        continue;
      }
      section = trim(body.substr(1, body.size() - 2));
      continue;
    }
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) +
                       ": expected key = value");
      continue;
    }
    RawEntry e;
    e.value = trim(body.substr(eq + 1));
    e.line = line_no;
    parse_annotations(comment, e);
    const std::string key = section + "." + trim(body.substr(0, eq));
    if (entries.count(key)) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key " +
                       key);
      continue;
    }
    entries[key] = e;
  }

  ScenarioConfig cfg;
  for (const FieldSpec& f : schema()) {
    auto it = entries.find(f.id());
    if (it == entries.end()) {
      if (f.required) {
        std::string msg = "missing required key " + f.id();
        if (f.cls == FieldClass::Assumed)
          msg += " (assumed-class value; the bundled baseline uses " +
                 format_g17(f.documented_default) +
                 " — set it explicitly to acknowledge the assumption)";
        errors.push_back(msg);
      }
      continue;
    }
    RawEntry& e = it->second;
    e.used = true;
    const std::string err = f.set(cfg, e.value);
    if (!err.empty()) {
      errors.push_back("line " + std::to_string(e.line) + ": " + f.id() +
                       ": " + err);
      continue;
    }
    if (!e.unit_note.empty() && !f.unit.empty() && e.unit_note != f.unit)
      errors.push_back("line " + std::to_string(e.line) + ": " + f.id() +
                       ": unit annotation '" + e.unit_note +
                       "' does not match expected '" + f.unit + "'");
    if (f.cls != FieldClass::Setting && f.numeric) {
      Source src = f.cls == FieldClass::Assumed ? Source::Assumed
                                                : Source::Baseline;
      if (f.numeric(cfg) != f.documented_default) src = Source::User;
      if (e.source_note == "user") src = Source::User;
      else if (e.source_note == "assumed") src = Source::Assumed;
      else if (e.source_note == "baseline") src = Source::Baseline;
      else if (!e.source_note.empty())
        errors.push_back("line " + std::to_string(e.line) + ": " + f.id() +
                         ": unknown source class '" + e.source_note + "'");
      cfg.sources[f.id()] = src;
    }
  }

  for (const auto& [key, e] : entries)
    if (!e.used)
      errors.push_back("line " + std::to_string(e.line) + ": unknown key " +
                       key);

  if (errors.empty()) {
    cfg.gbm.Q0 = cfg.scenario.Q_CBD;
    cfg.search.B_range.min = 0.0;
    cfg.search.B_range.max = cfg.scenario.A;
    for (const auto& v : cfg.scenario.violations()) errors.push_back(v);
    if (cfg.gbm.sigma < 0.0) errors.push_back("sigma must be >= 0");
    if (cfg.gbm.k <= 0.0) errors.push_back("k must be > 0");
    if (cfg.D < 0.0 || cfg.K < 0.0)
      errors.push_back("switching costs must be >= 0");
    if (cfg.sim.months < 1) errors.push_back("simulation.months must be >= 1");
    if (cfg.sim.paths < 1) errors.push_back("simulation.paths must be >= 1");
    if (!(cfg.benefit.B_step > 0.0))
      errors.push_back("benefit.B_step must be > 0");
    if (!(cfg.benefit.mu >= 0.0 && cfg.benefit.mu <= 1.0))
      errors.push_back("benefit.mu must lie in [0, 1]");
    if (!(cfg.benefit.beta_min >= 0.0 &&
          cfg.benefit.beta_min <= cfg.benefit.beta_max &&
          cfg.benefit.beta_max <= 1.0))
      errors.push_back("benefit bounds need 0 <= beta_min <= beta_max <= 1");
    if (!(cfg.search.F_range.step > 0.0) || !(cfg.search.B_range.step > 0.0))
      errors.push_back("search steps must be > 0");
    if (cfg.search.F_range.max < cfg.search.F_range.min)
      errors.push_back("search.F_max must be >= search.F_min");
    if (!(cfg.search.F_range.min > 0.0))
      errors.push_back("search.F_min must be > 0");
    if (cfg.search.refinements < 0)
      errors.push_back("search.refinements must be >= 0");
    if (!(cfg.ridership_scale > 0.0))
      errors.push_back("options.ridership_scale must be > 0");
  }

  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid config " << path << ":";
    for (const auto& m : errors) os << "\n  - " << m;
    throw ValidationError(os.str());
  }
  return cfg;
}

std::string serialize(const ScenarioConfig& config) {
  std::ostringstream os;
  std::string section;
  for (const FieldSpec& f : schema()) {
    if (f.section != section) {
      if (!section.empty()) os << "\n";
      section = f.section;
      os << "[" << section << "]\n";
    }
    os << f.key << " = " << f.get(config);
    std::vector<std::string> notes;
    if (!f.unit.empty()) notes.push_back("unit: " + f.unit);
    auto it = config.sources.find(f.id());
    if (it != config.sources.end())
      notes.push_back("source: " + to_string(it->second));
    if (!notes.empty()) {
      os << "  # " << notes[0];
      for (std::size_t i = 1; i < notes.size(); ++i) os << "; " << notes[i];
    }
    os << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const ScenarioConfig& config) {
  const std::string text = serialize(config);
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

RidershipSeries load_ridership(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open ridership file: " + path);

  std::vector<std::string> errors;
  RidershipSeries series;
  std::string line;
  int line_no = 0;

  auto month_index = [](const std::string& m) -> std::optional<int> {
    if (m.size() != 7 || m[4] != '-') return std::nullopt;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u})
      if (!std::isdigit(static_cast<unsigned char>(m[i]))) return std::nullopt;
    const int year = std::stoi(m.substr(0, 4));
    const int mon = std::stoi(m.substr(5, 2));
    if (mon < 1 || mon > 12) return std::nullopt;
    return year * 12 + (mon - 1);
  };

  if (!std::getline(in, line))
    throw ValidationError("ridership file is empty: " + path);
  ++line_no;
  if (trim(line) != "month,boardings")
    throw ValidationError(path + ": expected header 'month,boardings'");

  std::optional<int> prev;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty()) continue;
    const std::size_t comma = row.find(',');
    if (comma == std::string::npos) {
      errors.push_back("row " + std::to_string(line_no) + ": expected month,boardings");
      continue;
    }
    const std::string m = trim(row.substr(0, comma));
    const auto idx = month_index(m);
    if (!idx) {
      errors.push_back("row " + std::to_string(line_no) +
                       ": malformed month '" + m + "' (expected YYYY-MM)");
      continue;
    }
    const auto v = parse_number(row.substr(comma + 1));
    if (!v) {
      errors.push_back("row " + std::to_string(line_no) + ": malformed boardings");
      continue;
    }
    if (!(*v > 0.0)) {
      errors.push_back("row " + std::to_string(line_no) +
                       ": boardings must be > 0");
      continue;
    }
    if (prev) {
      if (*idx == *prev)
        errors.push_back("row " + std::to_string(line_no) +
                         ": duplicate month " + m);
      else if (*idx < *prev)
        errors.push_back("row " + std::to_string(line_no) +
                         ": months out of order at " + m);
      else if (*idx != *prev + 1)
        errors.push_back("row " + std::to_string(line_no) +
                         ": gap in months before " + m);
    }
    prev = idx;
    series.month.push_back(m);
    series.boardings.push_back(*v);
  }

  if (!errors.empty()) {
    std::ostringstream os;
    os << "invalid ridership file " << path << ":";
    for (const auto& m : errors) os << "\n  - " << m;
    throw ValidationError(os.str());
  }
  return series;
}

}  // namespace fareopt
