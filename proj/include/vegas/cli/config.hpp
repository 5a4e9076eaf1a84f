#pragma once

// Experiment configs loaded from JSON.
//
// A config file holds one experiment object, an array of them, or
// {"experiments": [...]}. Unknown fields are rejected at every level.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vegas/distx.hpp"
#include "vegas/engine.hpp"
#include "vegas/schedules.hpp"

namespace vegas::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ScheduleSpec {
  std::string kind;
  std::optional<double> t;     // single_threshold
  std::optional<double> EX;    // fixed, two_threshold; defaults to E[X]
  std::optional<double> E;     // specific_E; defaults to max(E[X], 5)
  std::optional<double> unit;  // luby; defaults to 1
};

enum class Mode { analyze, simulate, both };
const char* to_string(Mode mode);

struct ExperimentConfig {
  DistSpec distribution;
  RuntimeLaw law = RuntimeLaw::deterministic;
  ScheduleSpec schedule;
  Mode mode = Mode::both;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 42;
  double eps_tail = 1e-10;
  Caps caps;
  std::uint64_t attempt_cap = 200'000'000;
  // simulate fails (exit 5) when more than this fraction of trials trip a cap.
  double max_cap_trip_fraction = 0.0;
};

std::vector<ExperimentConfig> parse_config(const std::string& json_text);
std::vector<ExperimentConfig> load_config(const std::string& path);

// Resolves defaults against the distribution; throws ConfigError on invalid
// parameters.
Schedule build_schedule(const ScheduleSpec& spec, const DistX& dist);

}  // namespace vegas::cli
