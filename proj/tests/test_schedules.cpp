#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "vegas/errors.hpp"
#include "vegas/schedules.hpp"

using namespace vegas;

namespace {

// Independent rebuild of block_for_E from its generating formula.
std::vector<Run> block_formula(double E) {
  const auto tr = oracle::lambda_trace(E);
  std::vector<Run> out;
  for (std::size_t k = 1; k < tr.size(); ++k) {
    const double l = tr[k - 1] + 2.0;
    const auto count = static_cast<std::uint64_t>(2.0 * std::ceil(l * l + 1.0));
    out.push_back({count, 2.0 * std::exp(E - tr[k])});
  }
  out.push_back({2, 2.0 * std::exp(E + 10.0)});
  return out;
}

std::vector<double> first_budgets(const Schedule& s, std::size_t n) {
  std::vector<double> out;
  auto c = s.cursor();
  for (std::size_t i = 0; i < n; ++i) out.push_back(c.next());
  return out;
}

// Measured over E in [6, 120] and rounded up.
constexpr double kUniversalPrefixConstant = 5.2e4;

}  // namespace

TEST(SingleThreshold, Budgets) {
  const Schedule s0 = single_threshold_schedule(0.0);
  for (std::uint64_t i = 1; i <= 10; ++i) EXPECT_EQ(s0.budget(i), 2.0);
  const Schedule s5 = single_threshold_schedule(5.0);
  EXPECT_NEAR(s5.budget(1), 296.826, 1e-3);
  EXPECT_EQ(s5.budget(1000), 2.0 * std::exp(5.0));
  EXPECT_TRUE(s5.periodic());
  EXPECT_EQ(s5.max_budget(), 2.0 * std::exp(5.0));
  EXPECT_EQ(s5.label(), "single_threshold(t=5)");
}

TEST(FixedSchedule, UsesExpectationPlusOne) {
  const Schedule f = fixed_schedule(4.0);
  EXPECT_EQ(f.kind(), ScheduleKind::fixed);
  EXPECT_EQ(f.parameter(), 5.0);
  for (std::uint64_t i = 1; i <= 5; ++i) EXPECT_EQ(f.budget(i), 2.0 * std::exp(5.0));
}

TEST(TwoThreshold, BlockForFour) {
  const Schedule s = two_threshold_schedule(4.0);
  const BudgetBlock b = s.chunk(0);
  ASSERT_EQ(b.entries.size(), 2u);
  EXPECT_EQ(b.entries[0].count, 5u);
  EXPECT_NEAR(b.entries[0].budget, 27.299, 1e-3);
  EXPECT_NEAR(b.entries[0].budget, 2.0 * std::exp(4.0) / 4.0, 1e-12);
  EXPECT_EQ(b.entries[1].count, 4u);
  EXPECT_NEAR(b.entries[1].budget, 806.858, 1e-3);
  EXPECT_NEAR(s.budget(6), 806.858, 1e-3);
  EXPECT_NEAR(s.budget(5), 27.299, 1e-3);
  // The block repeats.
  EXPECT_EQ(s.budget(10), s.budget(1));
  EXPECT_EQ(s.budget(15), s.budget(6));
}

TEST(TwoThreshold, BlockForOne) {
  const BudgetBlock b = two_threshold_schedule(1.0).chunk(0);
  ASSERT_EQ(b.entries.size(), 2u);
  EXPECT_EQ(b.entries[0].count, 2u);
  EXPECT_NEAR(b.entries[0].budget, 2.0 * std::exp(1.0), 1e-12);
  EXPECT_EQ(b.entries[1].count, 2u);
  EXPECT_NEAR(b.entries[1].budget, 2.0 * std::exp(3.0), 1e-12);
}

TEST(BlockForE, Five) {
  const BudgetBlock b = block_for_E(5.0);
  ASSERT_EQ(b.entries.size(), 1u);
  EXPECT_EQ(b.entries[0].count, 2u);
  EXPECT_DOUBLE_EQ(b.entries[0].budget, 2.0 * std::exp(15.0));
}

TEST(BlockForE, Six) {
  const BudgetBlock b = block_for_E(6.0);
  ASSERT_EQ(b.entries.size(), 4u);
  const std::uint64_t counts[] = {130, 112, 102, 2};
  const double exps[] = {0.625, 0.954, 1.144, 16.0};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(b.entries[i].count, counts[i]);
    EXPECT_NEAR(std::log(b.entries[i].budget / 2.0), exps[i], 1e-3);
  }
  EXPECT_EQ(b.length(), 346u);
}

TEST(BlockForE, MatchesGeneratingFormula) {
  for (double E = 5.0; E <= 280.0; E += 0.37) {
    const BudgetBlock b = block_for_E(E);
    const auto ref = block_formula(E);
    ASSERT_EQ(b.entries.size(), ref.size()) << E;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      EXPECT_EQ(b.entries[i].count, ref[i].count) << E;
      EXPECT_NEAR(b.entries[i].budget, ref[i].budget, 1e-12 * ref[i].budget) << E;
    }
  }
}

TEST(BlockForE, CountsEvenAndBudgetsIncreasing) {
  for (double E = 5.0; E <= 280.0; E += 0.71) {
    const BudgetBlock b = block_for_E(E);
    for (std::size_t i = 0; i < b.entries.size(); ++i) {
      EXPECT_GE(b.entries[i].count, 2u);
      EXPECT_EQ(b.entries[i].count % 2, 0u);
      if (i > 0) {
        EXPECT_GT(b.entries[i].budget, b.entries[i - 1].budget) << E;
      }
    }
  }
}

TEST(BlockForE, Guards) {
  EXPECT_THROW(block_for_E(4.99), DomainError);
  EXPECT_THROW(block_for_E(280.5), RangeGuardError);
  EXPECT_THROW(specific_E_schedule(4.0), DomainError);
}

TEST(SpecificE, CyclesTheBlock) {
  const Schedule s = specific_E_schedule(6.0);
  const BudgetBlock b = block_for_E(6.0);
  EXPECT_TRUE(s.periodic());
  const auto xs = first_budgets(s, 3 * b.length());
  for (std::size_t i = 0; i < b.length(); ++i) {
    EXPECT_EQ(xs[i], xs[i + b.length()]);
    EXPECT_EQ(xs[i], xs[i + 2 * b.length()]);
  }
  EXPECT_EQ(xs.front(), b.entries.front().budget);
  EXPECT_EQ(xs[b.length() - 1], b.entries.back().budget);
}

TEST(Universal, ChunksAreConsecutiveBlocks) {
  const Schedule u = universal_schedule();
  EXPECT_FALSE(u.periodic());
  EXPECT_TRUE(std::isinf(u.max_budget()));
  std::vector<double> expected;
  for (double E = 5.0; E <= 9.0; E += 1.0) {
    for (const auto& r : block_for_E(E).entries) expected.insert(expected.end(), r.count, r.budget);
  }
  const auto xs = first_budgets(u, expected.size());
  EXPECT_EQ(xs, expected);
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(u.budget(i + 1), expected[i]);
}

TEST(Universal, BudgetsUnbounded) {
  const Schedule u = universal_schedule();
  for (double M : {1e10, 1e50, 1e100}) {
    bool exceeded = false;
    for (std::uint64_t j = 0; j < 300 && !exceeded; ++j) {
      for (const auto& r : u.chunk(j).entries) exceeded |= r.budget >= M;
    }
    EXPECT_TRUE(exceeded) << M;
  }
}

TEST(Universal, PrefixCostIsGeometric) {
  double worst = 0.0;
  oracle::Sum prefix;
  for (int E = 6; E <= 120; ++E) {
    prefix.add(block_for_E(E - 1.0).total_budget());
    worst = std::max(worst, prefix.value() / std::exp(static_cast<double>(E)));
  }
  EXPECT_LE(worst, kUniversalPrefixConstant);
  EXPECT_GT(worst, 0.9 * kUniversalPrefixConstant);
}

TEST(Luby, Multipliers) {
  const std::uint64_t expected[] = {1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8};
  for (std::uint64_t i = 1; i <= 15; ++i) EXPECT_EQ(luby_multiplier(i), expected[i - 1]) << i;
  EXPECT_THROW(luby_multiplier(0), DomainError);
}

TEST(Luby, ScaledBudgetsAndChunks) {
  const Schedule l3 = luby_schedule(3.0);
  EXPECT_EQ(l3.budget(3), 6.0);
  const auto xs = first_budgets(l3, 1023);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_EQ(xs[i], 3.0 * static_cast<double>(luby_multiplier(i + 1))) << i;
  }
  EXPECT_THROW(luby_schedule(0.0), DomainError);
}

TEST(Schedules, DeterministicAndPositive) {
  const std::vector<Schedule> all{single_threshold_schedule(2.5), fixed_schedule(3.0), two_threshold_schedule(7.0),
                                  specific_E_schedule(12.0),      universal_schedule(), luby_schedule(1.0)};
  for (const auto& s : all) {
    const auto a = first_budgets(s, 5000);
    const auto b = first_budgets(s, 5000);
    EXPECT_EQ(a, b) << s.label();
    for (std::size_t i = 0; i < a.size(); ++i) {
      ASSERT_TRUE(std::isfinite(a[i]) && a[i] > 0.0) << s.label();
      if (i < 300) {
        EXPECT_EQ(s.budget(i + 1), a[i]) << s.label() << " " << i;
      }
    }
  }
}

TEST(Schedules, Guards) {
  EXPECT_THROW(single_threshold_schedule(291.0), RangeGuardError);
  EXPECT_THROW(single_threshold_schedule(NAN), DomainError);
  EXPECT_THROW(two_threshold_schedule(0.5), DomainError);
  EXPECT_THROW(two_threshold_schedule(281.0), RangeGuardError);
  EXPECT_THROW(fixed_schedule(-1.0), DomainError);
  EXPECT_THROW(single_threshold_schedule(0.0).budget(0), DomainError);
}
