#pragma once

// Deterministic restart schedules: infinite streams of positive step budgets.
//
// Every schedule decomposes into consecutive chunks. Periodic schedules repeat
// one chunk forever; the universal schedule's chunk j is block_for_E(5 + j);
// the Luby schedule's chunk 0 is [1] and chunk j >= 1 is the first 2^j - 1
// Luby terms followed by 2^j (times the unit). The analysis module certifies
// renewal tails at chunk boundaries.

#include <cstdint>
#include <string>
#include <vector>

namespace vegas {

// Largest exponent a budget 2e^t may use.
inline constexpr double kMaxBudgetExponent = 290.0;
// Largest E for the blocks of Algorithms 4/5 (tail budget is 2e^{E+10}).
inline constexpr double kMaxBlockE = 280.0;
inline constexpr double kUniversalFirstE = 5.0;

struct Run {
  std::uint64_t count;
  double budget;
};

struct BudgetBlock {
  std::vector<Run> entries;

  std::uint64_t length() const;
  // Sum of count * budget: the cost of the block if every attempt fails.
  double total_budget() const;
};

enum class ScheduleKind { single_threshold, fixed, two_threshold, specific_E, universal, luby };

const char* to_string(ScheduleKind kind);

class Schedule {
 public:
  ScheduleKind kind() const { return kind_; }
  // t for single_threshold/fixed (the exponent actually used), EX for
  // two_threshold, E for specific_E, unit for luby; 0 for universal.
  double parameter() const { return param_; }
  const std::string& label() const { return label_; }

  bool periodic() const { return !period_.entries.empty(); }
  // Largest budget ever used; +inf for universal and luby.
  double max_budget() const;

  // i-th budget, 1-indexed.
  double budget(std::uint64_t i) const;

  // j-th chunk (0-indexed).
  BudgetBlock chunk(std::uint64_t j) const;

  class Cursor {
   public:
    explicit Cursor(const Schedule& s);
    double next();

   private:
    void load(std::uint64_t j);

    const Schedule* schedule_;
    std::uint64_t chunk_index_ = 0;
    BudgetBlock block_;
    std::size_t run_ = 0;
    std::uint64_t used_ = 0;
  };

  Cursor cursor() const { return Cursor(*this); }

 private:
  friend Schedule single_threshold_schedule(double t);
  friend Schedule fixed_schedule(double EX);
  friend Schedule two_threshold_schedule(double EX);
  friend Schedule specific_E_schedule(double E);
  friend Schedule universal_schedule();
  friend Schedule luby_schedule(double unit);

  Schedule(ScheduleKind kind, double param, BudgetBlock period, std::string label)
      : kind_(kind), param_(param), period_(std::move(period)), label_(std::move(label)) {}

  ScheduleKind kind_;
  double param_;
  BudgetBlock period_;  // non-empty iff periodic
  std::string label_;
};

// Every budget 2e^t.
Schedule single_threshold_schedule(double t);
// Single threshold with t = EX + 1.
Schedule fixed_schedule(double EX);
// Repeats ceil(EX+1) budgets 2e^{EX - ln EX} then ceil(ln EX + 2) budgets 2e^{EX+2}.
Schedule two_threshold_schedule(double EX);

// [(2 ceil((lambda^{(k-1)}(E)+2)^2+1), 2e^{E - lambda^{(k)}(E)}) for k = 1..lambda*(E)]
// followed by (2, 2e^{E+10}).
BudgetBlock block_for_E(double E);
// Cycles block_for_E(E).
Schedule specific_E_schedule(double E);
// block_for_E(5), block_for_E(6), ... each once.
Schedule universal_schedule();

// unit * L_i with L = 1,1,2,1,1,2,4,...
Schedule luby_schedule(double unit);
std::uint64_t luby_multiplier(std::uint64_t i);

}  // namespace vegas
