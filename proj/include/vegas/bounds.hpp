#pragma once

// Expected-cost bounds of the schedules, evaluated with the analytic oracle.
// The constants marked "measured" were obtained by running the oracle over the
// built-in zoo under both laws and rounding the worst ratio up; they are frozen
// here so regressions in either the schedules or the oracle show up.

#include <cmath>
#include <string>
#include <vector>

#include "vegas/distx.hpp"

namespace vegas::bounds {

// fixed: cost <= 16 e^{E[X]+1} (E[X]+1).
inline constexpr double kFixedFactor = 16.0;
// two_threshold: cost <= c e^{E[X]} (ln E[X] + 2). Measured.
inline constexpr double kTwoThresholdConstant = 1.2;
// specific_E with E = max(E[X], 5): cost <= 12 e^{10} e^{E}.
inline const double kSpecificEFactor = 12.0 * std::exp(10.0);
// Universal schedule: cost <= C e^{E[X]} and cost <= C E[T]. Measured.
inline constexpr double kUniversalConstant = 320.0;

inline constexpr double kZooMinEX = 1.0;
inline constexpr double kZooMaxEX = 30.0;

struct BoundCheck {
  std::string check;  // fixed, two_threshold, specific_E, universal, universal_vs_ET,
                      // negative_constant, negative_fixed_t
  std::string distribution;
  RuntimeLaw law = RuntimeLaw::deterministic;
  std::string schedule;
  double cost = 0.0;
  double tail_bound = 0.0;
  double log_bound = 0.0;
  bool holds = false;
  // Log-space slack; >= 0 iff holds.
  double margin = 0.0;
  std::string detail;
};

// Upper bounds for every zoo member with E[X] in [1, 30], both laws.
std::vector<BoundCheck> check_upper_bounds(const std::vector<DistX>& zoo);

// single_threshold(t) is infinite on constant(E) for t <= E-1, and costs at
// least E e^E on fixed_t_counterexample(E, t), E in {5,10,20} (deterministic law).
std::vector<BoundCheck> check_negative_results();

// Worst observed ratio of cost / reference for a bound family; used when
// re-measuring the frozen constants.
struct MeasuredRatio {
  double two_threshold = 0.0;  // cost / (e^{E[X]} (ln E[X] + 2))
  double universal = 0.0;      // cost / e^{E[X]}
};
MeasuredRatio measure_constants(const std::vector<DistX>& zoo);

}  // namespace vegas::bounds
