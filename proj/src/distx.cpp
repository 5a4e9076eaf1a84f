#include "vegas/distx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include "vegas/errors.hpp"

namespace vegas {

namespace {

void check_family_parameter(const char* what, double E) {
  if (!std::isfinite(E) || E <= 0.0) {
    throw DomainError(fmt::format("{}: parameter E must be > 0, got {}", what, E));
  }
  if (E > kMaxFamilyParameter) {
    throw RangeGuardError(
        fmt::format("{}: parameter E = {} exceeds guard {}", what, E, kMaxFamilyParameter));
  }
}

// Upper end of the adversarial density's support.
double adversarial_tmax(double E) {
  const double a = E + 1.0;
  return a + std::log1p(std::exp(-a));
}

// ln Pr(T > n | X = x) under the geometric law, n >= 1.
double log_geometric_survival(double n, double x) {
  return n * std::log1p(-std::exp(-x));
}

// Integrates g over [lo, hi] splitting at the given interior breakpoints.
template <class F>
double integrate_split(F g, double lo, double hi, std::initializer_list<double> cuts) {
  using boost::math::quadrature::gauss_kronrod;
  std::vector<double> pts{lo};
  for (double c : cuts) {
    if (c > lo && c < hi) pts.push_back(c);
  }
  pts.push_back(hi);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (pts[i + 1] <= pts[i]) continue;
    total += gauss_kronrod<double, 31>::integrate(g, pts[i], pts[i + 1], 20, 1e-13);
  }
  return total;
}

}  // namespace

DistX DistX::discrete(std::vector<Atom> atoms, std::string label) {
  if (atoms.empty()) throw DomainError("discrete: at least one atom required");
  double total = 0.0;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.x) || a.x < 0.0) {
      throw DomainError(fmt::format("discrete: atom location {} must be finite and >= 0", a.x));
    }
    if (a.x > kMaxAtom) {
      throw RangeGuardError(fmt::format("discrete: atom location {} exceeds guard {}", a.x, kMaxAtom));
    }
    if (!(a.p > 0.0) || a.p > 1.0) {
      throw DomainError(fmt::format("discrete: probability {} outside (0, 1]", a.p));
    }
    total += a.p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw DomainError(fmt::format("discrete: probabilities sum to {:.17g}, expected 1", total));
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& l, const Atom& r) { return l.x < r.x; });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].x == atoms[i - 1].x) {
      throw DomainError(fmt::format("discrete: duplicate atom at {}", atoms[i].x));
    }
  }

  DistX d;
  d.family_ = Family::discrete;
  d.atoms_ = std::move(atoms);
  d.cumulative_.reserve(d.atoms_.size());
  double run = 0.0;
  for (const auto& a : d.atoms_) {
    run += a.p;
    d.cumulative_.push_back(run);
  }
  d.cumulative_.back() = 1.0;
  if (label.empty()) {
    label = "discrete(";
    for (std::size_t i = 0; i < d.atoms_.size(); ++i) {
      label += fmt::format("{}{:g}:{:g}", i ? ";" : "", d.atoms_[i].x, d.atoms_[i].p);
    }
    label += ")";
  }
  d.label_ = std::move(label);
  return d;
}

DistX DistX::constant(double c) {
  if (!std::isfinite(c) || c < 0.0) {
    throw DomainError(fmt::format("constant: value {} must be finite and >= 0", c));
  }
  DistX d = discrete({{c, 1.0}}, fmt::format("constant(c={:g})", c));
  d.family_ = Family::constant;
  return d;
}

DistX DistX::adversarial_density(double E) {
  check_family_parameter("adversarial_density", E);
  DistX d;
  d.family_ = Family::adversarial_density;
  d.param_ = E;
  d.label_ = fmt::format("adversarial_density(E={:g})", E);
  return d;
}

double DistX::support_min() const {
  return family_ == Family::adversarial_density ? 0.0 : atoms_.front().x;
}

double DistX::support_max() const {
  return family_ == Family::adversarial_density ? adversarial_tmax(param_) : atoms_.back().x;
}

double DistX::cdf_strict(double t) const {
  if (family_ == Family::adversarial_density) return cdf(t);
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const Atom& a, double v) { return a.x < v; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DistX::cdf(double t) const {
  if (family_ == Family::adversarial_density) {
    const double a = param_ + 1.0;
    if (t <= 0.0) return 0.0;
    if (t >= adversarial_tmax(param_)) return 1.0;
    return std::exp(-a) * std::expm1(t);
  }
  auto it = std::upper_bound(atoms_.begin(), atoms_.end(), t,
                             [](double v, const Atom& a) { return v < a.x; });
  if (it == atoms_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
}

double DistX::expectation() const {
  if (family_ == Family::adversarial_density) {
    // Antiderivative (x-1)e^{x-(E+1)} evaluated on [0, tmax].
    const double ea = std::exp(-(param_ + 1.0));
    return (param_ + std::log1p(ea)) * (1.0 + ea) + ea;
  }
  if (exact_mean_) return *exact_mean_;
  double s = 0.0;
  for (const auto& a : atoms_) s += a.p * a.x;
  return s;
}

DistX DistX::with_exact_mean(DistX d, double mean) {
  d.exact_mean_ = mean;
  return d;
}

double DistX::variance() const {
  const double mu = expectation();
  if (family_ == Family::adversarial_density) {
    // Antiderivative of x^2 e^{x-a} is (x^2 - 2x + 2) e^{x-a}.
    const double a = param_ + 1.0;
    const double ea = std::exp(-a);
    const double tm = adversarial_tmax(param_);
    const double second = (tm * tm - 2.0 * tm + 2.0) * (1.0 + ea) - 2.0 * ea;
    return second - mu * mu;
  }
  double s = 0.0;
  for (const auto& a : atoms_) s += a.p * (a.x - mu) * (a.x - mu);
  return s;
}

double DistX::sample(Rng& rng) const {
  const double u = rng.uniform_pos();
  if (family_ == Family::adversarial_density) {
    const double a = param_ + 1.0;
    return a + std::log(u + std::exp(-a));
  }
  auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return atoms_[static_cast<std::size_t>(it - cumulative_.begin())].x;
}

// ---------------------------------------------------------------------------

DistX two_point(double E) {
  check_family_parameter("two_point", E);
  const double p0 = 1.0 / (E + 1.0);
  return DistX::with_exact_mean(
      DistX::discrete({{0.0, p0}, {E + 1.0, 1.0 - p0}}, fmt::format("two_point(E={:g})", E)), E);
}

DistX fixed_t_counterexample(double E, double t) {
  check_family_parameter("fixed_t_counterexample", E);
  if (!std::isfinite(t) || t < E) {
    throw DomainError(fmt::format("fixed_t_counterexample: requires t >= E, got t={} E={}", t, E));
  }
  if (t > kMaxFamilyParameter) {
    throw RangeGuardError(fmt::format("fixed_t_counterexample: t = {} exceeds guard", t));
  }
  const double high = E / (t + 1.0);
  return DistX::with_exact_mean(DistX::discrete({{0.0, 1.0 - high}, {t + 1.0, high}},
                                               fmt::format("fixed_t_counterexample(E={:g},t={:g})", E, t)),
                                E);
}

DistX variance_counterexample(double E, double V) {
  check_family_parameter("variance_counterexample", E);
  const double eE = std::exp(-E);
  if (!std::isfinite(V) || V < 2.0 * E * E * eE) {
    throw DomainError(fmt::format(
        "variance_counterexample: requires V >= 2E^2 e^-E = {}, got {}", 2.0 * E * E * eE, V));
  }
  const double denom = V - E * E * eE;
  const double p_mid = 1.0 - V * eE / denom;
  const double p_top = (E * eE) * (E * eE) / denom;
  const double x_top = V / (E * eE);
  for (double p : {eE, p_mid, p_top}) {
    if (!(p > 0.0) || p > 1.0) {
      throw DomainError(fmt::format(
          "variance_counterexample: parameters E={} V={} give probability {} outside (0,1]", E, V, p));
    }
  }
  return DistX::with_exact_mean(DistX::discrete({{0.0, eE}, {E, p_mid}, {x_top, p_top}},
                                               fmt::format("variance_counterexample(E={:g},V={:g})", E, V)),
                                E);
}

DistX build_distribution(const DistSpec& spec) {
  auto need = [&](const std::optional<double>& v, const char* field) {
    if (!v) throw DomainError(fmt::format("distribution '{}' requires field '{}'", spec.kind, field));
    return *v;
  };
  if (spec.kind == "two_point") return two_point(need(spec.E, "E"));
  if (spec.kind == "fixed_t_counterexample") {
    return fixed_t_counterexample(need(spec.E, "E"), need(spec.t, "t"));
  }
  if (spec.kind == "adversarial_density") return DistX::adversarial_density(need(spec.E, "E"));
  if (spec.kind == "variance_counterexample") {
    return variance_counterexample(need(spec.E, "E"), need(spec.V, "V"));
  }
  if (spec.kind == "constant") return DistX::constant(need(spec.c, "c"));
  if (spec.kind == "discrete") return DistX::discrete(spec.atoms);
  throw DomainError(fmt::format("unknown distribution kind '{}'", spec.kind));
}

// ---------------------------------------------------------------------------

const char* to_string(RuntimeLaw law) {
  return law == RuntimeLaw::deterministic ? "deterministic" : "geometric";
}

RuntimeLaw parse_law(const std::string& name) {
  if (name == "deterministic") return RuntimeLaw::deterministic;
  if (name == "geometric") return RuntimeLaw::geometric;
  throw DomainError(fmt::format("unknown runtime law '{}'", name));
}

TruncatedStats runtime_stats(const RuntimeModel& model, double budget) {
  if (!(budget > 0.0)) {
    throw DomainError(fmt::format("runtime_stats: budget must be > 0, got {}", budget));
  }
  const DistX& d = model.dist;

  if (model.law == RuntimeLaw::deterministic) {
    if (d.family() == Family::adversarial_density) {
      const double a = d.parameter() + 1.0;
      const double tmax = adversarial_tmax(d.parameter());
      const double lc = std::clamp(std::log(budget), 0.0, tmax);
      // 1 - F(L) written to avoid cancellation near the top of the support.
      const double q = (1.0 + std::exp(-a)) * -std::expm1(lc - tmax);
      double m = 0.5 * (std::exp(2.0 * lc - a) - std::exp(-a));
      if (q > 0.0) m += budget * q;
      return {q, m, d.cdf(lc)};
    }
    TruncatedStats s{0.0, 0.0, 0.0};
    for (const auto& a : d.atoms()) {
      const double t = std::exp(a.x);
      if (t <= budget) {
        s.success += a.p;
        s.m += a.p * t;
      } else {
        s.q += a.p;
        s.m += a.p * budget;
      }
    }
    return s;
  }

  const double n = std::floor(budget);
  if (n < 1.0) return {1.0, 0.0, 0.0};

  if (d.family() == Family::adversarial_density) {
    const double a = d.parameter() + 1.0;
    const double tmax = adversarial_tmax(d.parameter());
    const double xc = std::log(n);
    auto density = [a](double x) { return std::exp(x - a); };
    auto surv = [&](double x) { return density(x) * std::exp(log_geometric_survival(n, x)); };
    auto succ = [&](double x) { return density(x) * -std::expm1(log_geometric_survival(n, x)); };
    // E[min(T, n) | X=x] = (1 - (1-p)^n) / p with p = e^{-x}.
    auto trunc_mean = [&](double x) {
      return std::exp(2.0 * x - a) * -std::expm1(log_geometric_survival(n, x));
    };
    const auto cuts = {xc - 8.0, xc - 2.0, xc, xc + 3.0, xc + 8.0};
    const double success = integrate_split(succ, 0.0, tmax, cuts);
    const double q = success < 0.5 ? 1.0 - success : integrate_split(surv, 0.0, tmax, cuts);
    const double m = integrate_split(trunc_mean, 0.0, tmax, cuts);
    return {q, m, success < 0.5 ? success : 1.0 - q};
  }

  TruncatedStats s{0.0, 0.0, 0.0};
  for (const auto& a : d.atoms()) {
    const double ls = log_geometric_survival(n, a.x);
    const double fin = -std::expm1(ls);
    s.q += a.p * std::exp(ls);
    s.success += a.p * fin;
    s.m += a.p * fin * std::exp(a.x);
  }
  return s;
}

double expected_runtime(const RuntimeModel& model) {
  const DistX& d = model.dist;
  if (d.family() == Family::adversarial_density) {
    const double a = d.parameter() + 1.0;
    const double tmax = adversarial_tmax(d.parameter());
    return 0.5 * (std::exp(2.0 * tmax - a) - std::exp(-a));
  }
  double s = 0.0;
  for (const auto& a : d.atoms()) s += a.p * std::exp(a.x);
  return s;
}

double sample_runtime_given(RuntimeLaw law, double x, Rng& rng) {
  if (law == RuntimeLaw::deterministic) return std::exp(x);
  const double p = std::exp(-x);
  if (p >= 1.0) return 1.0;
  // Inversion: smallest m with 1 - (1-p)^m >= 1 - u.
  const double u = rng.uniform_pos();
  const double t = std::ceil(std::log(u) / std::log1p(-p));
  return std::max(1.0, t);
}

double sample_runtime(const RuntimeModel& model, Rng& rng) {
  const double x = model.dist.sample(rng);
  return sample_runtime_given(model.law, x, rng);
}

}  // namespace vegas
