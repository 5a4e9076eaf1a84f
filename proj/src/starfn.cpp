#include "vegas/starfn.hpp"

#include <cmath>
#include <string>

#include "vegas/errors.hpp"

namespace vegas::starfn {

double lambda(double x, double coefficient) {
  if (!std::isfinite(x) || x < 1.0) {
    throw DomainError("lambda: argument must be finite and >= 1, got " +
                      std::to_string(x));
  }
  return coefficient * std::log(x);
}

double lambda_iter(int k, double x, double coefficient) {
  if (k < 0) throw DomainError("lambda_iter: negative iteration count");
  if (!std::isfinite(x) || x < kFixedPoint) {
    throw DomainError("lambda_iter: argument must be >= 5");
  }
  double v = x;
  for (int i = 0; i < k; ++i) {
    // lambda() rejects an intermediate below 1
    v = lambda(v, coefficient);
  }
  return v;
}

IterationTrace lambda_trace(double x, double coefficient) {
  if (!std::isfinite(x) || x < kFixedPoint) {
    throw DomainError("lambda_trace: argument must be >= 5");
  }
  IterationTrace trace;
  trace.start = x;
  trace.values.push_back(x);
  while (trace.values.back() > kFixedPoint) {
    if (static_cast<int>(trace.values.size()) > kMaxIterations) {
      throw InternalError("lambda_trace: iteration cap reached");
    }
    trace.values.push_back(lambda(trace.values.back(), coefficient));
  }
  return trace;
}

int lambda_star(double x, double coefficient) {
  return lambda_trace(x, coefficient).star();
}

std::uint64_t tower(int n) {
  if (n < 0) throw DomainError("tower: negative argument");
  if (n >= 5) throw OverflowError("tower: Tower(n) for n >= 5 is not representable");
  std::uint64_t v = 1;
  for (int i = 0; i < n; ++i) v = std::uint64_t{1} << v;
  return v;
}

int log_star(std::uint64_t n) {
  if (n == 0) throw DomainError("log_star: argument must be >= 1");
  for (int k = 0; k < 5; ++k) {
    if (tower(k) >= n) return k;
  }
  // Tower(5) = 2^65536 exceeds every 64-bit n.
  return 5;
}

}  // namespace vegas::starfn
