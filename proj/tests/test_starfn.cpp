#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vegas/errors.hpp"
#include "vegas/starfn.hpp"

using namespace vegas;
using namespace vegas::starfn;

namespace {

std::vector<double> grid(double lo, double hi, int n) {
  std::vector<double> xs;
  for (int i = 0; i <= n; ++i) xs.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / n));
  return xs;
}

}  // namespace

TEST(Lambda, Values) {
  EXPECT_NEAR(lambda(5.0), 4.8283, 1e-4);
  EXPECT_GT(lambda(5.0), 4.82);
  EXPECT_DOUBLE_EQ(lambda(std::exp(1.0 / 3.0)), 1.0);
  EXPECT_NEAR(lambda(410.0), 18.049, 1e-3);
  EXPECT_DOUBLE_EQ(lambda(1.0), 0.0);
}

TEST(Lambda, RejectsOutOfDomain) {
  EXPECT_THROW(lambda(0.5), DomainError);
  EXPECT_THROW(lambda(std::nan("")), DomainError);
  EXPECT_THROW(lambda(INFINITY), DomainError);
}

TEST(LambdaIter, Values) {
  EXPECT_EQ(lambda_iter(0, 7.3), 7.3);
  EXPECT_NEAR(lambda_iter(2, 410.0), 8.680, 1e-3);
  EXPECT_NEAR(lambda_iter(3, 6.0), 4.856, 1e-3);
  EXPECT_THROW(lambda_iter(1, 4.0), DomainError);
  EXPECT_THROW(lambda_iter(-1, 6.0), DomainError);
}

TEST(LambdaStar, Values) {
  EXPECT_EQ(lambda_star(5.0), 0);
  EXPECT_EQ(lambda_star(6.0), 3);
  EXPECT_EQ(lambda_star(16.0), 5);
  EXPECT_THROW(lambda_star(4.9), DomainError);
}

TEST(LambdaTrace, SixteenMatchesHandTrace) {
  const auto tr = lambda_trace(16.0);
  const std::vector<double> expected{16.0, 8.318, 6.355, 5.548, 5.140, 4.911};
  ASSERT_EQ(tr.values.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_NEAR(tr.values[i], expected[i], 1e-3);
}

TEST(LambdaTrace, StructureOnGrid) {
  for (double x : grid(5.0, 1e12, 400)) {
    const auto tr = lambda_trace(x);
    const auto ref = oracle::lambda_trace(x);
    ASSERT_EQ(tr.values.size(), ref.size()) << x;
    EXPECT_EQ(tr.start, x);
    EXPECT_EQ(tr.values[0], x);
    for (std::size_t i = 0; i + 1 < tr.values.size(); ++i) {
      EXPECT_GT(tr.values[i], 5.0);
      EXPECT_LT(tr.values[i + 1], tr.values[i]);
      EXPECT_NEAR(tr.values[i + 1], ref[i + 1], 1e-12 * ref[i + 1]);
    }
    EXPECT_LE(tr.last(), 5.0);
    EXPECT_EQ(tr.star(), lambda_star(x));
  }
}

TEST(StarIterates, ReciprocalSumAndLastIterate) {
  for (double x : grid(5.0, 1e9, 2000)) {
    const auto tr = lambda_trace(x);
    double sum = 0.0;
    for (double v : tr.values) sum += 1.0 / v;
    EXPECT_LT(sum, 2.0) << x;
    EXPECT_GT(tr.last(), 4.0) << x;
    EXPECT_LE(tr.last(), 5.0) << x;
  }
}

TEST(StarIterates, LogStarSandwich) {
  const int star410 = lambda_star(410.0);
  EXPECT_EQ(star410, static_cast<int>(oracle::lambda_trace(410.0).size()) - 1);
  for (double x : grid(410.0, 1e9, 2000)) {
    const int ls = log_star(static_cast<std::uint64_t>(std::ceil(x)));
    const int st = lambda_star(x);
    EXPECT_LE(ls, st) << x;
    EXPECT_LE(st, 2 * ls + star410) << x;
  }
}

TEST(StarIterates, ExponentIdentity) {
  for (double x : grid(5.0, 1e12, 300)) {
    const auto tr = lambda_trace(x);
    for (std::size_t k = 1; k < tr.values.size(); ++k) {
      const double lhs = std::exp(-tr.values[k]);
      const double rhs = std::pow(tr.values[k - 1], -3.0);
      EXPECT_NEAR(lhs / rhs, 1.0, 1e-9);
    }
  }
}

TEST(LambdaStar, MonotoneOnRandomPairs) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> logx(std::log(5.0), std::log(1e15));
  for (int i = 0; i < 20'000; ++i) {
    double x = std::exp(logx(gen));
    double y = std::exp(logx(gen));
    if (x > y) std::swap(x, y);
    EXPECT_LE(lambda_star(x), lambda_star(y));
  }
}

TEST(LambdaTrace, WrongCoefficientBreaksLastIterateBound) {
  // lambda(x) = 2 ln x has no fixed point, so iterates can dive below 4.
  const auto tr = lambda_trace(6.0, 2.0);
  EXPECT_LT(tr.last(), 4.0);
}

TEST(Tower, Values) {
  EXPECT_EQ(tower(0), 1u);
  EXPECT_EQ(tower(1), 2u);
  EXPECT_EQ(tower(2), 4u);
  EXPECT_EQ(tower(3), 16u);
  EXPECT_EQ(tower(4), 65536u);
  EXPECT_THROW(tower(5), OverflowError);
  EXPECT_THROW(tower(-1), DomainError);
}

TEST(LogStar, Values) {
  EXPECT_EQ(log_star(1), 0);
  EXPECT_EQ(log_star(2), 1);
  EXPECT_EQ(log_star(3), 2);
  EXPECT_EQ(log_star(16), 3);
  EXPECT_EQ(log_star(17), 4);
  EXPECT_EQ(log_star(65536), 4);
  EXPECT_EQ(log_star(65537), 5);
  EXPECT_EQ(log_star(UINT64_MAX), 5);
  EXPECT_THROW(log_star(0), DomainError);
}

TEST(LogStar, InvertsTower) {
  for (int k = 0; k <= 4; ++k) {
    EXPECT_EQ(log_star(tower(k)), k);
    if (k > 0) {
      EXPECT_EQ(log_star(tower(k - 1) + 1), k);
    }
  }
}
