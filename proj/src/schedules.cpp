#include "vegas/schedules.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "vegas/errors.hpp"
#include "vegas/starfn.hpp"

namespace vegas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double guarded_budget(double exponent) {
  if (!std::isfinite(exponent) || exponent > kMaxBudgetExponent) {
    throw RangeGuardError(
        fmt::format("budget exponent {} exceeds guard {}", exponent, kMaxBudgetExponent));
  }
  return 2.0 * std::exp(exponent);
}

void append_run(BudgetBlock& block, std::uint64_t count, double budget) {
  if (!block.entries.empty() && block.entries.back().budget == budget) {
    block.entries.back().count += count;
  } else {
    block.entries.push_back({count, budget});
  }
}

double budget_in_block(const BudgetBlock& block, std::uint64_t offset) {
  for (const auto& r : block.entries) {
    if (offset < r.count) return r.budget;
    offset -= r.count;
  }
  throw InternalError("budget_in_block: offset outside block");
}

}  // namespace

std::uint64_t BudgetBlock::length() const {
  std::uint64_t n = 0;
  for (const auto& r : entries) n += r.count;
  return n;
}

double BudgetBlock::total_budget() const {
  double s = 0.0;
  for (const auto& r : entries) s += static_cast<double>(r.count) * r.budget;
  return s;
}

const char* to_string(ScheduleKind kind) {
  switch (kind) {
    case ScheduleKind::single_threshold: return "single_threshold";
    case ScheduleKind::fixed: return "fixed";
    case ScheduleKind::two_threshold: return "two_threshold";
    case ScheduleKind::specific_E: return "specific_E";
    case ScheduleKind::universal: return "universal";
    case ScheduleKind::luby: return "luby";
  }
  return "?";
}

double Schedule::max_budget() const {
  if (!periodic()) return kInf;
  double m = 0.0;
  for (const auto& r : period_.entries) m = std::max(m, r.budget);
  return m;
}

double Schedule::budget(std::uint64_t i) const {
  if (i == 0) throw DomainError("Schedule::budget: index is 1-based");
  if (periodic()) return budget_in_block(period_, (i - 1) % period_.length());
  if (kind_ == ScheduleKind::luby) return param_ * static_cast<double>(luby_multiplier(i));
  // universal
  std::uint64_t offset = i - 1;
  for (double E = kUniversalFirstE;; E += 1.0) {
    const BudgetBlock b = block_for_E(E);
    const std::uint64_t len = b.length();
    if (offset < len) return budget_in_block(b, offset);
    offset -= len;
  }
}

BudgetBlock Schedule::chunk(std::uint64_t j) const {
  if (periodic()) return period_;
  if (kind_ == ScheduleKind::universal) return block_for_E(kUniversalFirstE + static_cast<double>(j));
  // luby
  BudgetBlock b;
  if (j == 0) {
    b.entries.push_back({1, param_});
    return b;
  }
  if (j >= 63) throw RangeGuardError("luby chunk index too large");
  const std::uint64_t prefix = (std::uint64_t{1} << j) - 1;
  for (std::uint64_t i = 1; i <= prefix; ++i) {
    append_run(b, 1, param_ * static_cast<double>(luby_multiplier(i)));
  }
  append_run(b, 1, param_ * static_cast<double>(std::uint64_t{1} << j));
  return b;
}

Schedule::Cursor::Cursor(const Schedule& s) : schedule_(&s) { load(0); }

void Schedule::Cursor::load(std::uint64_t j) {
  chunk_index_ = j;
  if (!schedule_->periodic() || j == 0) block_ = schedule_->chunk(j);
  run_ = 0;
  used_ = 0;
}

double Schedule::Cursor::next() {
  while (used_ == block_.entries[run_].count) {
    used_ = 0;
    if (++run_ == block_.entries.size()) load(chunk_index_ + 1);
  }
  ++used_;
  return block_.entries[run_].budget;
}

// ---------------------------------------------------------------------------

Schedule single_threshold_schedule(double t) {
  if (!std::isfinite(t)) throw DomainError("single_threshold: t must be finite");
  BudgetBlock p;
  p.entries.push_back({1, guarded_budget(t)});
  return Schedule(ScheduleKind::single_threshold, t, std::move(p),
                  fmt::format("single_threshold(t={:g})", t));
}

Schedule fixed_schedule(double EX) {
  if (!std::isfinite(EX) || EX < 0.0) throw DomainError("fixed: E[X] must be finite and >= 0");
  Schedule s = single_threshold_schedule(EX + 1.0);
  s.kind_ = ScheduleKind::fixed;
  s.label_ = fmt::format("fixed(EX={:g})", EX);
  return s;
}

Schedule two_threshold_schedule(double EX) {
  if (!std::isfinite(EX) || EX < 1.0) throw DomainError("two_threshold: requires E[X] >= 1");
  if (EX > kMaxBlockE) throw RangeGuardError("two_threshold: E[X] exceeds guard");
  const double lnE = std::log(EX);
  BudgetBlock p;
  p.entries.push_back({static_cast<std::uint64_t>(std::ceil(EX + 1.0)), guarded_budget(EX - lnE)});
  p.entries.push_back({static_cast<std::uint64_t>(std::ceil(lnE + 2.0)), guarded_budget(EX + 2.0)});
  return Schedule(ScheduleKind::two_threshold, EX, std::move(p),
                  fmt::format("two_threshold(EX={:g})", EX));
}

BudgetBlock block_for_E(double E) {
  if (!std::isfinite(E) || E < starfn::kFixedPoint) throw DomainError("block_for_E: requires E >= 5");
  if (E > kMaxBlockE) {
    throw RangeGuardError(fmt::format("block_for_E: E = {} exceeds guard {}", E, kMaxBlockE));
  }
  const auto trace = starfn::lambda_trace(E);
  BudgetBlock b;
  for (int k = 1; k <= trace.star(); ++k) {
    const double prev = trace.values[static_cast<std::size_t>(k - 1)];
    const auto count = 2 * static_cast<std::uint64_t>(std::ceil((prev + 2.0) * (prev + 2.0) + 1.0));
    b.entries.push_back({count, guarded_budget(E - trace.values[static_cast<std::size_t>(k)])});
  }
  b.entries.push_back({2, guarded_budget(E + 10.0)});
  return b;
}

Schedule specific_E_schedule(double E) {
  return Schedule(ScheduleKind::specific_E, E, block_for_E(E),
                  fmt::format("specific_E(E={:g})", E));
}

Schedule universal_schedule() {
  return Schedule(ScheduleKind::universal, 0.0, BudgetBlock{}, "universal");
}

Schedule luby_schedule(double unit) {
  if (!std::isfinite(unit) || !(unit > 0.0)) throw DomainError("luby: unit must be > 0");
  return Schedule(ScheduleKind::luby, unit, BudgetBlock{}, fmt::format("luby(unit={:g})", unit));
}

std::uint64_t luby_multiplier(std::uint64_t i) {
  if (i == 0) throw DomainError("luby_multiplier: index is 1-based");
  for (;;) {
    int k = 1;
    while (((std::uint64_t{1} << k) - 1) < i) ++k;
    if (i == (std::uint64_t{1} << k) - 1) return std::uint64_t{1} << (k - 1);
    i -= (std::uint64_t{1} << (k - 1)) - 1;
  }
}

}  // namespace vegas
