#pragma once

// Exact expected cost of schedule/model pairs and checkers for the
// threshold lemmas the schedules rely on.

#include <cstdint>
#include <optional>
#include <string>

#include "vegas/distx.hpp"
#include "vegas/schedules.hpp"

namespace vegas {

struct CostEstimate {
  // +inf when no budget of the schedule can ever succeed.
  double expected_cost = 0.0;
  // The true expected cost lies in [expected_cost, expected_cost + tail_bound].
  double tail_bound = 0.0;
  std::uint64_t attempts_summed = 0;

  bool infinite() const;
  double upper() const { return expected_cost + tail_bound; }
};

inline constexpr double kDefaultEpsTail = 1e-10;
inline constexpr std::uint64_t kDefaultAttemptCap = 200'000'000;

// Renewal summation E[total] = sum_i (prod_{j<i} q_j) m_i with (q_i, m_i)
// the truncated stats of budget i. Stops at a chunk boundary once the
// survival probability is <= eps_tail and the certified tail bound is
// <= eps_tail * max(1, cost so far). Throws TailNotConvergent if that does not
// happen within attempt_cap attempts.
CostEstimate analytic_cost(const RuntimeModel& model, const Schedule& schedule,
                           double eps_tail = kDefaultEpsTail,
                           std::uint64_t attempt_cap = kDefaultAttemptCap);

// Sum of the first `attempts` renewal terms: E[cost of attempts 1..n, stopping
// at the first success].
double analytic_partial_cost(const RuntimeModel& model, const Schedule& schedule,
                             std::uint64_t attempts);

struct LemmaVerdict {
  std::string lemma;
  bool holds = false;
  // t for lemma3, branch (1 or 2) for lemma5, k for lemma9 (0 = tail clause).
  std::optional<double> witness;
  // Slack of the inequality at the witness; >= 0 whenever holds.
  double margin = 0.0;
  std::string detail;
};

struct ThresholdRatio {
  double t_star;
  double ratio;      // e^t / Pr(X < t); +inf when Pr(X < t) == 0 on the range
  double log_ratio;
};

// Minimises e^t / Pr(X < t) over atoms + delta, a 10^4-point grid on
// [t_lo, t_hi] and (continuous families) the top of the support.
ThresholdRatio min_threshold_ratio(const DistX& dist, double t_lo, double t_hi);

// Some t in [0, E[X]+1] has e^t / Pr(X < t) <= e^{E[X]+1}. Margin is in log
// space: (E[X]+1) - ln(min ratio).
LemmaVerdict find_lemma3_threshold(const DistX& dist);

// Pr(X <= E[X] - ln E[X]) > 1/(E[X]+1) or Pr(X <= E[X]+2) > 1/(ln E[X]+2).
// Requires E[X] >= 1.
LemmaVerdict check_two_threshold_lemma(const DistX& dist);

// Some 1 <= k <= lambda*(E) has
// Pr(X < E - lambda^{(k)}(E)) >= ((lambda^{(k-1)}(E)+2)^2+1)^{-1},
// or Pr(X < E+10) >= 1/2. Requires E >= max(E[X], 5).
LemmaVerdict check_core_lemma(const DistX& dist, double E);

// Probability that one pass over block_for_E(E) completes a run.
double block_success_prob(const RuntimeModel& model, double E);

}  // namespace vegas
