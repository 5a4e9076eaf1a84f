#include "vegas/cli/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace vegas::cli {

using nlohmann::json;

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::analyze: return "analyze";
    case Mode::simulate: return "simulate";
    case Mode::both: return "both";
  }
  return "?";
}

namespace {

void only_fields(const json& j, const char* where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(fmt::format("{}: expected an object", where));
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(fmt::format("{}: unknown field \"{}\"", where, key));
    }
  }
}

std::optional<double> opt_number(const json& j, const char* key, const char* where) {
  if (!j.contains(key)) return std::nullopt;
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
  return v.get<double>();
}

std::uint64_t count_field(const json& j, const char* key, const char* where, std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d >= 0.0 && d == static_cast<double>(static_cast<std::uint64_t>(d)) && d < 1.8e19) {
      return static_cast<std::uint64_t>(d);
    }
  }
  throw ConfigError(fmt::format("{}.{}: expected a non-negative integer", where, key));
}

std::string string_field(const json& j, const char* key, const char* where) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw ConfigError(fmt::format("{}.{}: expected a string", where, key));
  }
  return j.at(key).get<std::string>();
}

DistSpec parse_distribution(const json& j) {
  only_fields(j, "distribution", {"kind", "E", "t", "V", "c", "atoms"});
  DistSpec d;
  d.kind = string_field(j, "kind", "distribution");
  d.E = opt_number(j, "E", "distribution");
  d.t = opt_number(j, "t", "distribution");
  d.V = opt_number(j, "V", "distribution");
  d.c = opt_number(j, "c", "distribution");
  if (j.contains("atoms")) {
    const json& a = j.at("atoms");
    if (!a.is_array()) throw ConfigError("distribution.atoms: expected an array");
    for (const json& atom : a) {
      if (atom.is_array() && atom.size() == 2 && atom[0].is_number() && atom[1].is_number()) {
        d.atoms.push_back({atom[0].get<double>(), atom[1].get<double>()});
      } else if (atom.is_object()) {
        only_fields(atom, "distribution.atoms[]", {"x", "p"});
        const auto x = opt_number(atom, "x", "distribution.atoms[]");
        const auto p = opt_number(atom, "p", "distribution.atoms[]");
        if (!x || !p) throw ConfigError("distribution.atoms[]: needs x and p");
        d.atoms.push_back({*x, *p});
      } else {
        throw ConfigError("distribution.atoms[]: expected [x, p] or {\"x\", \"p\"}");
      }
    }
  }
  return d;
}

ScheduleSpec parse_schedule(const json& j) {
  only_fields(j, "schedule", {"kind", "t", "EX", "E", "unit"});
  ScheduleSpec s;
  s.kind = string_field(j, "kind", "schedule");
  s.t = opt_number(j, "t", "schedule");
  s.EX = opt_number(j, "EX", "schedule");
  s.E = opt_number(j, "E", "schedule");
  s.unit = opt_number(j, "unit", "schedule");
  return s;
}

ExperimentConfig parse_experiment(const json& j) {
  only_fields(j, "experiment",
              {"distribution", "law", "schedule", "mode", "trials", "seed", "eps_tail", "caps",
               "attempt_cap", "max_cap_trip_fraction"});
  ExperimentConfig c;
  if (!j.contains("distribution")) throw ConfigError("experiment: missing \"distribution\"");
  if (!j.contains("schedule")) throw ConfigError("experiment: missing \"schedule\"");
  c.distribution = parse_distribution(j.at("distribution"));
  c.schedule = parse_schedule(j.at("schedule"));
  if (j.contains("law")) {
    try {
      c.law = parse_law(string_field(j, "law", "experiment"));
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
  }
  if (j.contains("mode")) {
    const std::string m = string_field(j, "mode", "experiment");
    if (m == "analyze") {
      c.mode = Mode::analyze;
    } else if (m == "simulate") {
      c.mode = Mode::simulate;
    } else if (m == "both") {
      c.mode = Mode::both;
    } else {
      throw ConfigError(fmt::format("experiment.mode: unknown mode \"{}\"", m));
    }
  }
  c.trials = count_field(j, "trials", "experiment", c.trials);
  c.seed = count_field(j, "seed", "experiment", c.seed);
  c.attempt_cap = count_field(j, "attempt_cap", "experiment", c.attempt_cap);
  if (auto e = opt_number(j, "eps_tail", "experiment")) {
    if (!(*e > 0.0)) throw ConfigError("experiment.eps_tail: must be > 0");
    c.eps_tail = *e;
  }
  if (auto f = opt_number(j, "max_cap_trip_fraction", "experiment")) {
    if (!(*f >= 0.0 && *f <= 1.0)) throw ConfigError("experiment.max_cap_trip_fraction: must be in [0, 1]");
    c.max_cap_trip_fraction = *f;
  }
  if (j.contains("caps")) {
    const json& caps = j.at("caps");
    only_fields(caps, "caps", {"max_attempts", "max_total_cost"});
    c.caps.max_attempts = count_field(caps, "max_attempts", "caps", c.caps.max_attempts);
    if (auto m = opt_number(caps, "max_total_cost", "caps")) {
      if (!(*m > 0.0)) throw ConfigError("caps.max_total_cost: must be > 0");
      c.caps.max_total_cost = *m;
    }
  }
  return c;
}

}  // namespace

std::vector<ExperimentConfig> parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  std::vector<ExperimentConfig> out;
  const json* list = &root;
  if (root.is_object() && root.contains("experiments")) {
    only_fields(root, "config", {"experiments"});
    list = &root.at("experiments");
    if (!list->is_array()) throw ConfigError("config.experiments: expected an array");
  }
  if (list->is_array()) {
    for (const json& e : *list) out.push_back(parse_experiment(e));
  } else {
    out.push_back(parse_experiment(*list));
  }
  if (out.empty()) throw ConfigError("config: no experiments");
  return out;
}

std::vector<ExperimentConfig> load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot open {}", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

Schedule build_schedule(const ScheduleSpec& spec, const DistX& dist) {
  const double ex = dist.expectation();
  try {
    if (spec.kind == "single_threshold") {
      if (!spec.t) throw ConfigError("schedule single_threshold: needs t");
      return single_threshold_schedule(*spec.t);
    }
    if (spec.kind == "fixed") return fixed_schedule(spec.EX.value_or(ex));
    if (spec.kind == "two_threshold") return two_threshold_schedule(spec.EX.value_or(ex));
    if (spec.kind == "specific_E") return specific_E_schedule(spec.E.value_or(std::max(ex, 5.0)));
    if (spec.kind == "universal") return universal_schedule();
    if (spec.kind == "luby") return luby_schedule(spec.unit.value_or(1.0));
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(fmt::format("schedule {}: {}", spec.kind, e.what()));
  }
  throw ConfigError(fmt::format("schedule: unknown kind \"{}\"", spec.kind));
}

}  // namespace vegas::cli
