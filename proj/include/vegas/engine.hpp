#pragma once

// Drives simulated or stepped Las Vegas processes through restart schedules.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "vegas/distx.hpp"
#include "vegas/rng.hpp"
#include "vegas/schedules.hpp"

namespace vegas {

struct StepResult {
  bool done;
  std::uint64_t steps_used;  // <= the requested steps
};

// A computation that can be advanced a bounded number of steps at a time.
class ResumableComputation {
 public:
  virtual ~ResumableComputation() = default;
  virtual StepResult advance(std::uint64_t max_steps) = 0;
};

// Builds a fresh instance for one attempt; all randomness must come from the
// given stream.
using ComputationFactory = std::function<std::unique_ptr<ResumableComputation>(Rng)>;

struct AttemptOutcome {
  bool success;
  double cost;
};

class Process {
 public:
  // Virtual-cost process: each attempt draws T from the model and costs
  // min(T, b), where b is the budget (deterministic law) or floor(budget)
  // whole steps (geometric law).
  static Process sampler(RuntimeModel model);
  static Process resumable(ComputationFactory factory, std::string label);

  bool is_sampler() const { return std::holds_alternative<RuntimeModel>(impl_); }
  // nullptr for resumable processes.
  const RuntimeModel* model() const { return std::get_if<RuntimeModel>(&impl_); }
  const std::string& label() const { return label_; }

  AttemptOutcome attempt(double budget, Rng rng) const;

 private:
  Process(std::variant<RuntimeModel, ComputationFactory> impl, std::string label)
      : impl_(std::move(impl)), label_(std::move(label)) {}

  std::variant<RuntimeModel, ComputationFactory> impl_;
  std::string label_;
};

// Each step succeeds with probability e^{-X}, X drawn once per instance.
// Realizes the geometric law as a stepped computation.
Process geometric_coin_process(DistX dist);
// Guesses a uniformly planted k-bit string, one uniform guess per step
// (X == k ln 2 under the geometric law). Requires 1 <= k <= 62.
Process planted_bitstring_process(int bits);

AttemptOutcome run_once_truncated(const Process& process, double budget, Rng rng);

struct Caps {
  std::uint64_t max_attempts = 10'000'000;
  double max_total_cost = 1e300;

  // Cost cap e^{E+20} for a known scale E of the problem.
  static Caps with_hint(double E);
};

struct ExecutionReport {
  bool success = false;
  double total_cost = 0.0;
  std::uint64_t attempts = 0;
  std::optional<std::uint64_t> succeeding_index;  // 1-based
  std::vector<AttemptOutcome> per_attempt;        // filled only when traced
};

// Attempt i uses stream streams.attempt(i). Throws CapExceeded when a cap
// trips before the first success.
ExecutionReport run_with_schedule(const Process& process, const Schedule& schedule,
                                  const TrialStreams& streams, const Caps& caps,
                                  bool trace = false);

enum class CapPolicy { fail, count };

struct MCOptions {
  Caps caps;
  CapPolicy cap_policy = CapPolicy::fail;
  // 0 selects VEGAS_RESTART_THREADS, falling back to the OpenMP default.
  int workers = 0;
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  // Trials that tripped a cap (count policy only); their partial cost is
  // included in the mean.
  std::uint64_t cap_trips = 0;
};

// Parallel over trials. Results are bit-identical for any worker count.
MCEstimate mc_expected_cost(const Process& process, const Schedule& schedule,
                            std::uint64_t trials, std::uint64_t seed,
                            const MCOptions& options = {});

// Single-threaded reference kernel.
MCEstimate mc_expected_cost_serial(const Process& process, const Schedule& schedule,
                                   std::uint64_t trials, std::uint64_t seed,
                                   const MCOptions& options = {});

int resolve_workers(int requested);

// Pairwise summation, fixed association order for a given length.
double pairwise_sum(std::span<const double> values);

}  // namespace vegas
