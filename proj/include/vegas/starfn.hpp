#pragma once

// Iterated functions, the lambda(x) = 3 ln x star function, and Tower/log*.

#include <cstdint>
#include <vector>

namespace vegas::starfn {

inline constexpr double kLambdaCoefficient = 3.0;
// lambda is strictly increasing and shrinking on [kFixedPoint, inf).
inline constexpr double kFixedPoint = 5.0;
inline constexpr int kMaxIterations = 200;

// The coefficient argument exists so verification can be run against a
// deliberately wrong lambda; production callers use the default.
double lambda(double x, double coefficient = kLambdaCoefficient);

// lambda^{(k)}(x); lambda_iter(0, x) == x. Requires x >= 5.
double lambda_iter(int k, double x, double coefficient = kLambdaCoefficient);

struct IterationTrace {
  double start = 0.0;
  // values[0] == start, values[i+1] == lambda(values[i]); the last entry is
  // the first one <= 5.
  std::vector<double> values;

  int star() const { return static_cast<int>(values.size()) - 1; }
  double last() const { return values.back(); }
};

IterationTrace lambda_trace(double x, double coefficient = kLambdaCoefficient);

// Smallest k with lambda^{(k)}(x) <= 5. Requires x >= 5.
int lambda_star(double x, double coefficient = kLambdaCoefficient);

// Tower(0) = 1, Tower(n) = 2^Tower(n-1). Throws OverflowError for n >= 5.
std::uint64_t tower(int n);

// Smallest k with Tower(k) >= n. Requires n >= 1.
int log_star(std::uint64_t n);

}  // namespace vegas::starfn
