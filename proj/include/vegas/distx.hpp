#pragma once

// Distributions of the conditioning variable X and the runtime models that
// generate the cost T with E[T | X] = e^X.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vegas/rng.hpp"

namespace vegas {

// Family parameters above this are rejected so e^{E+10} stays finite.
inline constexpr double kMaxFamilyParameter = 300.0;
// Atoms above this would overflow e^x.
inline constexpr double kMaxAtom = 700.0;

enum class Family { discrete, constant, adversarial_density };

struct Atom {
  double x;
  double p;
};

class DistX {
 public:
  // Atoms must have p > 0, distinct x >= 0 and sum to 1 within 1e-12; they
  // are sorted on construction.
  static DistX discrete(std::vector<Atom> atoms, std::string label = {});
  static DistX constant(double c);
  // Density e^{x-(E+1)} on [0, E+1+ln(1+e^{-(E+1)})].
  static DistX adversarial_density(double E);

  Family family() const { return family_; }
  const std::string& label() const { return label_; }

  // Empty for adversarial_density.
  std::span<const Atom> atoms() const { return atoms_; }
  // Family parameter of adversarial_density.
  double parameter() const { return param_; }

  double support_min() const;
  double support_max() const;

  // Pr(X < t).
  double cdf_strict(double t) const;
  // Pr(X <= t).
  double cdf(double t) const;
  double expectation() const;
  double variance() const;

  double sample(Rng& rng) const;

  // For families whose mean is known by construction; avoids the rounding of
  // sum(p_i x_i) at boundary cases such as Pr(X <= E - ln E) == 1/(E+1).
  static DistX with_exact_mean(DistX d, double mean);

 private:
  DistX() = default;

  Family family_ = Family::discrete;
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
  double param_ = 0.0;
  std::optional<double> exact_mean_;
  std::string label_;
};

struct DistSpec {
  std::string kind;
  std::optional<double> E;
  std::optional<double> t;
  std::optional<double> V;
  std::optional<double> c;
  std::vector<Atom> atoms;
};

// Pr(X=0) = 1/(E+1), Pr(X=E+1) = E/(E+1).
DistX two_point(double E);
// Pr(X=0) = 1 - E/(t+1), Pr(X=t+1) = E/(t+1); requires t >= E > 0.
DistX fixed_t_counterexample(double E, double t);
// Mean E, variance V, Pr(X<E) = e^{-E}; requires V >= 2E^2 e^{-E}.
DistX variance_counterexample(double E, double V);

DistX build_distribution(const DistSpec& spec);

// ---------------------------------------------------------------------------

enum class RuntimeLaw { deterministic, geometric };

const char* to_string(RuntimeLaw law);
RuntimeLaw parse_law(const std::string& name);

struct RuntimeModel {
  DistX dist;
  RuntimeLaw law = RuntimeLaw::deterministic;
};

// Analytic primitives of one truncated evaluation with budget b.
struct TruncatedStats {
  double q;        // Pr(T > b)
  double m;        // E[min(T, b)]
  double success;  // Pr(T <= b), computed directly rather than as 1 - q
};

// Under the geometric law only floor(b) steps are available. A deterministic
// run with T == b counts as a success.
TruncatedStats runtime_stats(const RuntimeModel& model, double budget);

// E[T] = E[e^X] under both laws.
double expected_runtime(const RuntimeModel& model);

double sample_runtime(const RuntimeModel& model, Rng& rng);

// Runtime given X = x under the model's law.
double sample_runtime_given(RuntimeLaw law, double x, Rng& rng);

}  // namespace vegas
