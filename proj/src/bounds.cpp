#include "vegas/bounds.hpp"

#include <algorithm>
#include <limits>

#include <fmt/format.h>

#include "vegas/analysis.hpp"
#include "vegas/schedules.hpp"

namespace vegas::bounds {

namespace {

constexpr RuntimeLaw kLaws[] = {RuntimeLaw::deterministic, RuntimeLaw::geometric};

bool in_range(const DistX& d) {
  const double ex = d.expectation();
  return ex >= kZooMinEX && ex <= kZooMaxEX;
}

BoundCheck upper(std::string check, const RuntimeModel& model, const Schedule& schedule,
                 double log_bound) {
  BoundCheck b;
  b.check = std::move(check);
  b.distribution = model.dist.label();
  b.law = model.law;
  b.schedule = schedule.label();
  b.log_bound = log_bound;
  try {
    const CostEstimate c = analytic_cost(model, schedule);
    b.cost = c.expected_cost;
    b.tail_bound = c.tail_bound;
    b.margin = log_bound - std::log(c.upper());
    b.holds = b.margin >= 0.0;
  } catch (const std::exception& e) {
    b.cost = std::numeric_limits<double>::quiet_NaN();
    b.detail = e.what();
  }
  return b;
}

}  // namespace

std::vector<BoundCheck> check_upper_bounds(const std::vector<DistX>& zoo) {
  std::vector<BoundCheck> out;
  for (const auto& d : zoo) {
    if (!in_range(d)) continue;
    const double ex = d.expectation();
    for (RuntimeLaw law : kLaws) {
      const RuntimeModel model{d, law};
      out.push_back(upper("fixed", model, fixed_schedule(ex),
                          std::log(kFixedFactor) + ex + 1.0 + std::log(ex + 1.0)));
      out.push_back(upper("two_threshold", model, two_threshold_schedule(ex),
                          std::log(kTwoThresholdConstant) + ex + std::log(std::log(ex) + 2.0)));
      const double E = std::max(ex, 5.0);
      out.push_back(upper("specific_E", model, specific_E_schedule(E), std::log(kSpecificEFactor) + E));
      const Schedule uni = universal_schedule();
      out.push_back(upper("universal", model, uni, std::log(kUniversalConstant) + ex));
      out.push_back(upper("universal_vs_ET", model, uni,
                          std::log(kUniversalConstant) + std::log(expected_runtime(model))));
    }
  }
  return out;
}

std::vector<BoundCheck> check_negative_results() {
  std::vector<BoundCheck> out;
  for (double E : {5.0, 10.0, 20.0}) {
    const RuntimeModel constant{DistX::constant(E), RuntimeLaw::deterministic};
    for (double t : {0.0, E / 2.0, E - 1.0}) {
      const Schedule s = single_threshold_schedule(t);
      const CostEstimate c = analytic_cost(constant, s);
      BoundCheck b;
      b.check = "negative_constant";
      b.distribution = constant.dist.label();
      b.schedule = s.label();
      b.cost = c.expected_cost;
      b.log_bound = std::numeric_limits<double>::infinity();
      b.holds = c.infinite();
      b.margin = b.holds ? 0.0 : -std::numeric_limits<double>::infinity();
      out.push_back(b);
    }
    std::vector<double> ts{E, E + 1.0, E + 5.0};
    if (2.0 * E != E + 5.0) ts.push_back(2.0 * E);
    for (double t : ts) {
      const RuntimeModel model{fixed_t_counterexample(E, t), RuntimeLaw::deterministic};
      const Schedule s = single_threshold_schedule(t);
      const CostEstimate c = analytic_cost(model, s);
      BoundCheck b;
      b.check = "negative_fixed_t";
      b.distribution = model.dist.label();
      b.schedule = s.label();
      b.cost = c.expected_cost;
      b.tail_bound = c.tail_bound;
      b.log_bound = std::log(E) + E;
      // A lower bound: the certified lower end of the interval must clear it.
      b.margin = std::log(c.expected_cost) - b.log_bound;
      b.holds = b.margin >= 0.0;
      out.push_back(b);
    }
  }
  return out;
}

MeasuredRatio measure_constants(const std::vector<DistX>& zoo) {
  MeasuredRatio r;
  for (const auto& d : zoo) {
    if (!in_range(d)) continue;
    const double ex = d.expectation();
    for (RuntimeLaw law : kLaws) {
      const RuntimeModel model{d, law};
      const double c3 = analytic_cost(model, two_threshold_schedule(ex)).upper();
      r.two_threshold = std::max(r.two_threshold, c3 / (std::exp(ex) * (std::log(ex) + 2.0)));
      const double c5 = analytic_cost(model, universal_schedule()).upper();
      r.universal = std::max(r.universal, c5 / std::exp(ex));
    }
  }
  return r;
}

}  // namespace vegas::bounds
