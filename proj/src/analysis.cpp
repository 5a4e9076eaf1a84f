#include "vegas/analysis.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <vector>

#include <fmt/format.h>

#include "vegas/errors.hpp"
#include "vegas/starfn.hpp"

namespace vegas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.69314718055994530942;

class StatsCache {
 public:
  explicit StatsCache(const RuntimeModel& model) : model_(model) {}

  const TruncatedStats& get(double budget) {
    auto it = memo_.find(budget);
    if (it == memo_.end()) it = memo_.emplace(budget, runtime_stats(model_, budget)).first;
    return it->second;
  }

 private:
  const RuntimeModel& model_;
  std::map<double, TruncatedStats> memo_;
};

double log_failure(const TruncatedStats& st) {
  if (st.q == 0.0) return -kInf;
  return st.success < 0.5 ? std::log1p(-st.success) : std::log(st.q);
}

// Running renewal sum.
struct Accumulator {
  double survival = 1.0;
  double cost = 0.0;
  std::uint64_t attempts = 0;

  void add_run(const TruncatedStats& st, std::uint64_t count) {
    attempts += count;
    if (survival == 0.0 || count == 0) return;
    const double c = static_cast<double>(count);
    const double lq = log_failure(st);
    // sum_{l<count} q^l
    double g;
    if (st.q == 0.0) {
      g = 1.0;
    } else if (st.success == 0.0) {
      g = c;
    } else {
      g = -std::expm1(c * lq) / st.success;
    }
    cost += survival * st.m * g;
    survival *= std::exp(c * lq);
  }
};

struct PeriodStats {
  double cost;        // expected cost of one pass entered with survival 1
  double log_fail;    // ln(prob. the whole pass fails)
  std::uint64_t length;
};

PeriodStats period_stats(const BudgetBlock& block, StatsCache& cache) {
  Accumulator acc;
  double lf = 0.0;
  for (const auto& r : block.entries) {
    const auto& st = cache.get(r.budget);
    acc.add_run(st, r.count);
    lf += static_cast<double>(r.count) * log_failure(st);
  }
  return {acc.cost, lf, acc.attempts};
}

// Bound on the expected cost of everything from the start of universal block
// E0 onwards, per unit of survival. Each block E costs at most
// e^E (4e^10 + 16 + 0.064 E): the k-loop sums to
// sum_k 4((l+2)^2+2) l^{-3} e^E with l = lambda^{(k-1)}(E) > 5, which is
// below e^E (7.84 sum 1/l + 0.064 lambda*(E)) and sum 1/l < 2, lambda*(E) <= E.
// Every later block fails with probability at most q(2e^{E0+10})^2 because q is
// nonincreasing in the budget.
std::optional<double> universal_tail_factor(double E0, StatsCache& cache) {
  if (E0 + 10.0 > kMaxBudgetExponent) return std::nullopt;
  const double qt = cache.get(2.0 * std::exp(E0 + 10.0)).q;
  const double r = std::exp(1.0) * qt * qt;
  if (!(r < 1.0)) return std::nullopt;
  const double beta0 = 4.0 * std::exp(10.0) + 16.0 + 0.064 * E0;
  return std::exp(E0) * (beta0 / (1.0 - r) + 0.064 * r / ((1.0 - r) * (1.0 - r)));
}

// Bound on the remaining cost after the first 2^k - 1 Luby terms, per unit of
// survival. The future splits into chunks D_i = (S_{k+i}, 2^{k+i}); S_{k+i}
// holds 2^i disjoint copies of S_k, so entering D_i has probability at most
// Q^{2^i - 1} with Q the failure probability of S_k, and D_i costs at most
// unit * 2^{k+i-1} (k+i+2).
std::optional<double> luby_tail_factor(std::uint64_t k, double unit, StatsCache& cache) {
  if (k == 0 || k > 60) return std::nullopt;
  double log_q = 0.0;
  for (std::uint64_t l = 0; l < k; ++l) {
    const double lf = log_failure(cache.get(unit * std::ldexp(1.0, static_cast<int>(l))));
    log_q += std::ldexp(1.0, static_cast<int>(k - 1 - l)) * lf;
  }
  if (!(log_q < 0.0)) return std::nullopt;
  if (log_q == -kInf) {
    return 0.0;
  }
  const double kd = static_cast<double>(k);
  double sum = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const double id = static_cast<double>(i);
    const double two_i = std::ldexp(1.0, i);
    const double log_term =
        (two_i - 1.0) * log_q + std::log(unit) + (kd + id - 1.0) * kLn2 + std::log(kd + id + 2.0);
    const double term = std::exp(log_term);
    sum += term;
    // term_{i+1} / term_i <= rho_i, nonincreasing in i.
    const double rho = std::exp(two_i * log_q) * 2.0 * (kd + id + 3.0) / (kd + id + 2.0);
    if (rho <= 0.5) return sum + term;
  }
  return std::nullopt;
}

}  // namespace

bool CostEstimate::infinite() const { return std::isinf(expected_cost); }

CostEstimate analytic_cost(const RuntimeModel& model, const Schedule& schedule, double eps_tail,
                           std::uint64_t attempt_cap) {
  if (!(eps_tail > 0.0)) throw DomainError("analytic_cost: eps_tail must be > 0");
  StatsCache cache(model);

  std::optional<PeriodStats> period;
  if (schedule.periodic()) {
    const BudgetBlock block = schedule.chunk(0);
    bool any_success = false;
    for (const auto& r : block.entries) any_success |= cache.get(r.budget).success > 0.0;
    // Support argument: no budget of the cycle can ever complete a run.
    if (!any_success) return {kInf, 0.0, 0};
    period = period_stats(block, cache);
  }

  Accumulator acc;
  for (std::uint64_t j = 0;; ++j) {
    if (acc.survival == 0.0) return {acc.cost, 0.0, acc.attempts};
    if (acc.survival <= eps_tail) {
      std::optional<double> factor;
      if (period) {
        if (period->log_fail < 0.0) factor = period->cost / -std::expm1(period->log_fail);
      } else if (schedule.kind() == ScheduleKind::universal) {
        factor = universal_tail_factor(kUniversalFirstE + static_cast<double>(j), cache);
      } else {
        factor = luby_tail_factor(j, schedule.parameter(), cache);
      }
      if (factor) {
        const double tail = acc.survival * *factor;
        if (tail <= eps_tail * std::max(1.0, acc.cost)) return {acc.cost, tail, acc.attempts};
      }
    }
    if (acc.attempts >= attempt_cap) {
      throw TailNotConvergent(fmt::format(
          "analytic_cost: no tail certificate for {} / {} within {} attempts (survival {:g})",
          model.dist.label(), schedule.label(), attempt_cap, acc.survival));
    }
    if (period) {
      acc.cost += acc.survival * period->cost;
      acc.survival *= std::exp(period->log_fail);
      acc.attempts += period->length;
      continue;
    }
    const BudgetBlock block = schedule.chunk(j);
    for (const auto& r : block.entries) acc.add_run(cache.get(r.budget), r.count);
  }
}

double analytic_partial_cost(const RuntimeModel& model, const Schedule& schedule,
                             std::uint64_t attempts) {
  StatsCache cache(model);
  Accumulator acc;
  for (std::uint64_t j = 0; acc.attempts < attempts; ++j) {
    const BudgetBlock block = schedule.chunk(j);
    for (const auto& r : block.entries) {
      const std::uint64_t take = std::min(r.count, attempts - acc.attempts);
      acc.add_run(cache.get(r.budget), take);
      if (acc.attempts == attempts) break;
    }
  }
  return acc.cost;
}

// ---------------------------------------------------------------------------

ThresholdRatio min_threshold_ratio(const DistX& dist, double t_lo, double t_hi) {
  if (!(t_lo < t_hi)) throw DomainError("min_threshold_ratio: requires t_lo < t_hi");
  constexpr int kGrid = 10'000;
  const double delta = 1e-9 * (1.0 + dist.expectation());

  std::vector<double> candidates;
  candidates.reserve(kGrid + dist.atoms().size() + 1);
  for (const auto& a : dist.atoms()) candidates.push_back(a.x + delta);
  if (dist.family() == Family::adversarial_density) candidates.push_back(dist.support_max());
  for (int i = 0; i < kGrid; ++i) {
    candidates.push_back(t_lo + (t_hi - t_lo) * static_cast<double>(i) / (kGrid - 1));
  }

  ThresholdRatio best{t_lo, kInf, kInf};
  for (double t : candidates) {
    if (t < t_lo || t > t_hi) continue;
    const double p = dist.cdf_strict(t);
    if (p <= 0.0) continue;
    const double lr = t - std::log(p);
    if (lr < best.log_ratio) best = {t, std::exp(lr), lr};
  }
  return best;
}

LemmaVerdict find_lemma3_threshold(const DistX& dist) {
  const double ex = dist.expectation();
  const ThresholdRatio r = min_threshold_ratio(dist, 0.0, ex + 1.0);
  LemmaVerdict v;
  v.lemma = "lemma3";
  v.margin = (ex + 1.0) - r.log_ratio;
  v.holds = v.margin >= 0.0;
  if (std::isfinite(r.log_ratio)) v.witness = r.t_star;
  v.detail = fmt::format("min ln(e^t/Pr(X<t)) = {:.12g} at t = {:.12g}; E[X]+1 = {:.12g}",
                         r.log_ratio, r.t_star, ex + 1.0);
  return v;
}

LemmaVerdict check_two_threshold_lemma(const DistX& dist) {
  const double ex = dist.expectation();
  if (!(ex >= 1.0)) throw DomainError("check_two_threshold_lemma: requires E[X] >= 1");
  const double lnE = std::log(ex);
  const double low = dist.cdf(ex - lnE) - 1.0 / (ex + 1.0);
  const double high = dist.cdf(ex + 2.0) - 1.0 / (lnE + 2.0);
  LemmaVerdict v;
  v.lemma = "lemma5";
  v.holds = low > 0.0 || high > 0.0;
  if (low > 0.0) {
    v.witness = 1.0;
  } else if (high > 0.0) {
    v.witness = 2.0;
  }
  v.margin = std::max(low, high);
  v.detail = fmt::format("branch1 slack {:.6g}, branch2 slack {:.6g}", low, high);
  return v;
}

LemmaVerdict check_core_lemma(const DistX& dist, double E) {
  const double ex = dist.expectation();
  if (!(E >= std::max(ex, starfn::kFixedPoint))) {
    throw DomainError(fmt::format("check_core_lemma: requires E >= max(E[X], 5); E = {}, E[X] = {}", E, ex));
  }
  const auto trace = starfn::lambda_trace(E);
  LemmaVerdict v;
  v.lemma = "lemma9";
  for (int k = 1; k <= trace.star(); ++k) {
    const double prev = trace.values[static_cast<std::size_t>(k - 1)];
    const double p = dist.cdf_strict(E - trace.values[static_cast<std::size_t>(k)]);
    const double threshold = 1.0 / ((prev + 2.0) * (prev + 2.0) + 1.0);
    if (p >= threshold) {
      v.holds = true;
      v.witness = k;
      v.margin = p - threshold;
      v.detail = fmt::format("k = {}: Pr(X < {:.6g}) = {:.6g} >= {:.6g}", k,
                             E - trace.values[static_cast<std::size_t>(k)], p, threshold);
      return v;
    }
  }
  const double p = dist.cdf_strict(E + 10.0);
  v.holds = p >= 0.5;
  v.witness = 0.0;
  v.margin = p - 0.5;
  v.detail = fmt::format("tail clause: Pr(X < {:.6g}) = {:.6g}", E + 10.0, p);
  return v;
}

double block_success_prob(const RuntimeModel& model, double E) {
  const double ex = model.dist.expectation();
  if (!(E >= std::max(ex, starfn::kFixedPoint))) {
    throw DomainError("block_success_prob: requires E >= max(E[X], 5)");
  }
  double log_fail = 0.0;
  for (const auto& r : block_for_E(E).entries) {
    log_fail += static_cast<double>(r.count) * log_failure(runtime_stats(model, r.budget));
  }
  return -std::expm1(log_fail);
}

}  // namespace vegas
