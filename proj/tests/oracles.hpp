#pragma once

// Reference computations used only by the tests. None of these call into the
// library's closed forms: they integrate, enumerate or sum term by term.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 200'000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  long double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0L : 2.0L) * f(a + i * h);
  return static_cast<double>(s * h / 3.0L);
}

// Neumaier-compensated sum.
class Sum {
 public:
  void add(double v) {
    const double t = s_ + v;
    c_ += std::abs(s_) >= std::abs(v) ? (s_ - t) + v : (v - t) + s_;
    s_ = t;
  }
  double value() const { return s_ + c_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct Atom {
  double x;
  double p;
};

// One truncated attempt given X = x with budget b, by explicit enumeration of
// the runtime values that fit.
struct AttemptTerms {
  double success;       // Pr(T <= b)
  double success_cost;  // E[T; T <= b]
  double fail;          // Pr(T > b)
  double fail_cost;     // charged on failure
};

inline AttemptTerms deterministic_attempt(double x, double b) {
  const double T = std::exp(x);
  if (T <= b) return {1.0, T, 0.0, b};
  return {0.0, 0.0, 1.0, b};
}

// T ~ Geometric(p = e^{-x}) on {1, 2, ...}; only floor(b) steps fit.
inline AttemptTerms geometric_attempt(double x, double b) {
  const auto n = static_cast<std::uint64_t>(std::floor(b));
  const double p = std::exp(-x);
  const double nd = static_cast<double>(n);
  if (p >= 1.0) return {n >= 1 ? 1.0 : 0.0, n >= 1 ? 1.0 : 0.0, n >= 1 ? 0.0 : 1.0, nd};
  const double lq = std::log1p(-p);
  Sum mass, cost;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const double pk = p * std::exp(static_cast<double>(k - 1) * lq);
    mass.add(pk);
    cost.add(static_cast<double>(k) * pk);
    if (pk < 1e-300) break;
  }
  const double fail = std::exp(nd * lq);
  return {mass.value(), cost.value(), fail, nd};
}

// Expected cost of the first n attempts (stopping at the first success) by
// walking the full outcome tree: every path of atom draws, cut at a success.
inline double enumerate_partial_cost(const std::vector<Atom>& atoms, const std::vector<double>& budgets,
                                     bool geometric) {
  const std::size_t n = budgets.size();
  std::vector<std::vector<AttemptTerms>> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& a : atoms) {
      terms[i].push_back(geometric ? geometric_attempt(a.x, budgets[i]) : deterministic_attempt(a.x, budgets[i]));
    }
  }
  Sum total;
  // Depth-first over (attempt index, probability of the path so far, cost so far).
  std::function<void(std::size_t, double, double)> walk = [&](std::size_t i, double prob, double cost) {
    if (i == n) {
      total.add(prob * cost);
      return;
    }
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      const AttemptTerms& t = terms[i][a];
      const double pa = prob * atoms[a].p;
      if (t.success > 0.0) total.add(pa * (t.success * cost + t.success_cost));
      if (t.fail > 0.0) walk(i + 1, pa * t.fail, cost + t.fail_cost);
    }
  };
  walk(0, 1.0, 0.0);
  return total.value();
}

// Kolmogorov-Smirnov statistic of a sample against a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

// lambda trace by direct iteration of 3 ln x.
inline std::vector<double> lambda_trace(double x) {
  std::vector<double> v{x};
  while (v.back() > 5.0) v.push_back(3.0 * std::log(v.back()));
  return v;
}

}  // namespace oracle
