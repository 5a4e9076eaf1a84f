#include "vegas/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>

#include <fmt/format.h>
#include <omp.h>

#include "vegas/errors.hpp"

namespace vegas {

namespace {

class GeometricCoin final : public ResumableComputation {
 public:
  GeometricCoin(const DistX& dist, Rng rng) : rng_(rng) {
    p_ = std::exp(-dist.sample(rng_));
  }

  StepResult advance(std::uint64_t max_steps) override {
    for (std::uint64_t i = 1; i <= max_steps; ++i) {
      if (rng_.uniform_pos() <= p_) return {true, i};
    }
    return {false, max_steps};
  }

 private:
  Rng rng_;
  double p_;
};

class PlantedBitstring final : public ResumableComputation {
 public:
  PlantedBitstring(int bits, Rng rng)
      : rng_(rng), mask_((std::uint64_t{1} << bits) - 1), target_(rng_() & mask_) {}

  StepResult advance(std::uint64_t max_steps) override {
    for (std::uint64_t i = 1; i <= max_steps; ++i) {
      if ((rng_() & mask_) == target_) return {true, i};
    }
    return {false, max_steps};
  }

 private:
  Rng rng_;
  std::uint64_t mask_;
  std::uint64_t target_;
};

struct TrialResult {
  double cost = 0.0;
  bool cap_trip = false;
  std::exception_ptr error;
};

TrialResult run_trial(const Process& process, const Schedule& schedule, std::uint64_t seed,
                      std::uint64_t trial, const MCOptions& options) {
  TrialResult r;
  try {
    r.cost = run_with_schedule(process, schedule, TrialStreams(seed, trial), options.caps).total_cost;
  } catch (const CapExceeded& e) {
    if (options.cap_policy == CapPolicy::count) {
      r.cost = e.total_cost();
      r.cap_trip = true;
    } else {
      r.error = std::current_exception();
    }
  } catch (...) {
    r.error = std::current_exception();
  }
  return r;
}

MCEstimate summarize(const std::vector<TrialResult>& results, std::uint64_t seed) {
  // Errors surface in trial order so the reported failure is reproducible.
  for (const auto& r : results) {
    if (r.error) std::rethrow_exception(r.error);
  }
  const std::size_t n = results.size();
  std::vector<double> v(n);
  MCEstimate est;
  est.trials = n;
  est.seed = seed;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = results[i].cost;
    est.cap_trips += results[i].cap_trip ? 1 : 0;
  }
  est.mean = pairwise_sum(v) / static_cast<double>(n);
  for (auto& x : v) x = (x - est.mean) * (x - est.mean);
  const double var = pairwise_sum(v) / static_cast<double>(n - 1);
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

void check_trials(std::uint64_t trials) {
  if (trials < 2) throw DomainError("mc_expected_cost: trials must be >= 2");
}

}  // namespace

Process Process::sampler(RuntimeModel model) {
  std::string label = fmt::format("{}/{}", model.dist.label(), to_string(model.law));
  return Process(std::move(model), std::move(label));
}

Process Process::resumable(ComputationFactory factory, std::string label) {
  return Process(std::move(factory), std::move(label));
}

AttemptOutcome Process::attempt(double budget, Rng rng) const {
  if (!(budget > 0.0)) throw DomainError("attempt: budget must be > 0");
  if (const auto* m = model()) {
    // Step-counted runs only get floor(b) whole steps.
    const double b = m->law == RuntimeLaw::geometric ? std::floor(budget) : budget;
    const double t = sample_runtime(*m, rng);
    return t <= b ? AttemptOutcome{true, t} : AttemptOutcome{false, b};
  }
  const auto& factory = std::get<ComputationFactory>(impl_);
  constexpr double kMaxSteps = 1.8e19;
  const std::uint64_t steps =
      budget >= kMaxSteps ? std::numeric_limits<std::uint64_t>::max()
                          : static_cast<std::uint64_t>(std::floor(budget));
  if (steps == 0) return {false, 0.0};
  auto instance = factory(rng);
  const StepResult r = instance->advance(steps);
  return {r.done, static_cast<double>(r.steps_used)};
}

Process geometric_coin_process(DistX dist) {
  std::string label = fmt::format("geometric_coin[{}]", dist.label());
  return Process::resumable(
      [dist = std::move(dist)](Rng rng) -> std::unique_ptr<ResumableComputation> {
        return std::make_unique<GeometricCoin>(dist, rng);
      },
      std::move(label));
}

Process planted_bitstring_process(int bits) {
  if (bits < 1 || bits > 62) throw DomainError("planted_bitstring: bits must be in [1, 62]");
  return Process::resumable(
      [bits](Rng rng) -> std::unique_ptr<ResumableComputation> {
        return std::make_unique<PlantedBitstring>(bits, rng);
      },
      fmt::format("planted_bitstring[k={}]", bits));
}

AttemptOutcome run_once_truncated(const Process& process, double budget, Rng rng) {
  return process.attempt(budget, rng);
}

Caps Caps::with_hint(double E) {
  Caps c;
  c.max_total_cost = std::min(1e300, std::exp(E + 20.0));
  return c;
}

ExecutionReport run_with_schedule(const Process& process, const Schedule& schedule,
                                  const TrialStreams& streams, const Caps& caps, bool trace) {
  if (caps.max_attempts == 0 || !(caps.max_total_cost > 0.0)) {
    throw DomainError("run_with_schedule: caps must be positive");
  }
  ExecutionReport report;
  auto cursor = schedule.cursor();
  for (;;) {
    if (report.attempts >= caps.max_attempts) {
      throw CapExceeded(CapKind::max_attempts, report.attempts, report.total_cost);
    }
    if (report.total_cost >= caps.max_total_cost) {
      throw CapExceeded(CapKind::max_total_cost, report.attempts, report.total_cost);
    }
    const double budget = cursor.next();
    ++report.attempts;
    const AttemptOutcome out = process.attempt(budget, streams.attempt(report.attempts));
    report.total_cost += out.cost;
    if (trace) report.per_attempt.push_back(out);
    if (out.success) {
      report.success = true;
      report.succeeding_index = report.attempts;
      return report;
    }
  }
}

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("VEGAS_RESTART_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

MCEstimate mc_expected_cost(const Process& process, const Schedule& schedule,
                            std::uint64_t trials, std::uint64_t seed, const MCOptions& options) {
  check_trials(trials);
  std::vector<TrialResult> results(trials);
  const int workers = resolve_workers(options.workers);
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for num_threads(workers) schedule(dynamic, 256)
  for (std::int64_t i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] =
        run_trial(process, schedule, seed, static_cast<std::uint64_t>(i), options);
  }
  return summarize(results, seed);
}

MCEstimate mc_expected_cost_serial(const Process& process, const Schedule& schedule,
                                   std::uint64_t trials, std::uint64_t seed,
                                   const MCOptions& options) {
  check_trials(trials);
  std::vector<TrialResult> results;
  results.reserve(trials);
  for (std::uint64_t i = 0; i < trials; ++i) {
    results.push_back(run_trial(process, schedule, seed, i, options));
  }
  return summarize(results, seed);
}

}  // namespace vegas
