#pragma once

// Subcommands of vegas_restart. Each returns a process exit code.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "vegas/cli/config.hpp"
#include "vegas/cli/table.hpp"
#include "vegas/starfn.hpp"

namespace vegas::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitConfig = 2,
  kExitTailNotConvergent = 3,
  kExitInfiniteCost = 4,
  kExitCapTrips = 5,
};

struct CommonOptions {
  Format format = Format::csv;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
};

// Columns of analyze/simulate output, in order.
const std::vector<std::string>& result_columns();
// Columns of verify output.
const std::vector<std::string>& verify_columns();
// Columns of sweep output.
const std::vector<std::string>& sweep_columns();
// Columns of demo output.
const std::vector<std::string>& demo_columns();

// Oracle (and Monte Carlo when a config's mode is `both` or `simulate`) per
// config. Rows are sorted by (distribution family, E[X], schedule, law).
int cmd_analyze(const std::vector<ExperimentConfig>& configs, const CommonOptions& opts,
                std::ostream& out, std::ostream& err);
// Monte Carlo only.
int cmd_simulate(const std::vector<ExperimentConfig>& configs, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err);
int cmd_verify(const std::string& scope, const CommonOptions& opts, std::ostream& out,
               std::ostream& err, double lambda_coefficient = starfn::kLambdaCoefficient);

struct SweepOptions {
  std::string family;
  double E_min = 0.0;
  double E_max = 0.0;
  double E_step = 1.0;
  std::vector<std::string> schedules;
  RuntimeLaw law = RuntimeLaw::deterministic;
  // fixed_t_counterexample: t = t_factor * E + t_offset.
  double t_factor = 2.0;
  double t_offset = 0.0;
  // variance_counterexample: V = V_factor * 2 E^2 e^{-E} (must be >= 1).
  double V_factor = 1.0;
  // single_threshold threshold; defaults to the family's t when it has one.
  std::optional<double> threshold;
  double eps_tail = 1e-10;
};
int cmd_sweep(const SweepOptions& sweep, const CommonOptions& opts, std::ostream& out,
              std::ostream& err);

// Runs the resumable demo processes against their geometric-law oracles.
int cmd_demo(const CommonOptions& opts, std::ostream& out, std::ostream& err);

// Full command-line front end; argv[0] is the program name.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vegas::cli
