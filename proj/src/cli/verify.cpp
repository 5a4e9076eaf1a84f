#include "vegas/cli/verify.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "vegas/analysis.hpp"
#include "vegas/bounds.hpp"
#include "vegas/cli/config.hpp"
#include "vegas/zoo.hpp"

namespace vegas::cli {

namespace {

constexpr const char* kScopes[] = {"all", "starfn", "lemma3", "lemma5", "lemma9", "cor10", "bounds"};
constexpr RuntimeLaw kLaws[] = {RuntimeLaw::deterministic, RuntimeLaw::geometric};

std::vector<double> starfn_points() {
  std::vector<double> xs{5.0, 6.0, 16.0, 410.0, 1e3, 1e6, 1e9};
  // Log grid on [5, 1e12].
  for (int i = 0; i <= 120; ++i) xs.push_back(5.0 * std::pow(2e11, i / 120.0));
  return xs;
}

Verdict from_lemma(const LemmaVerdict& lv, const std::string& subject, const std::string& law = {}) {
  return {lv.lemma, subject, law, {}, lv.holds, lv.witness, lv.margin, lv.detail};
}

void verify_starfn(double coeff, std::vector<Verdict>& out) {
  using namespace starfn;
  const int star410 = lambda_star(410.0, coeff);
  for (double x : starfn_points()) {
    const std::string subject = fmt::format("x={:.10g}", x);
    IterationTrace tr;
    try {
      tr = lambda_trace(x, coeff);
    } catch (const std::exception& e) {
      out.push_back({"starfn.trace", subject, {}, {}, false, std::nullopt, -1.0, e.what()});
      continue;
    }
    double sum = 0.0;
    for (double v : tr.values) sum += 1.0 / v;
    out.push_back({"starfn.sum", subject, {}, {}, sum < 2.0, tr.star(), 2.0 - sum,
                   fmt::format("sum of reciprocals {:.12g} over {} iterates", sum, tr.values.size())});

    const double last = tr.last();
    const double m_last = std::min(last - 4.0, 5.0 - last);
    out.push_back({"starfn.last", subject, {}, {}, last > 4.0 && last <= 5.0, tr.star(), m_last,
                   fmt::format("lambda^(lambda*) = {:.12g}", last)});

    // e^{-lambda^{(k)}(x)} == (lambda^{(k-1)}(x))^{-3}
    double worst = 0.0;
    for (std::size_t k = 1; k < tr.values.size(); ++k) {
      const double lhs = -tr.values[k];
      const double rhs = -3.0 * std::log(tr.values[k - 1]);
      worst = std::max(worst, std::abs(std::expm1(lhs - rhs)));
    }
    out.push_back({"starfn.identity", subject, {}, {}, worst <= 1e-9, std::nullopt, 1e-9 - worst,
                   fmt::format("max relative error {:.3g}", worst)});

    if (x >= 410.0) {
      const int ls = log_star(static_cast<std::uint64_t>(std::ceil(x)));
      const int st = tr.star();
      const int hi = 2 * ls + star410;
      out.push_back({"starfn.log_star", subject, {}, {}, ls <= st && st <= hi, st,
                     static_cast<double>(std::min(st - ls, hi - st)),
                     fmt::format("log* = {}, lambda* = {}, 2 log* + lambda*(410) = {}", ls, st, hi)});
    }
  }
  for (int k = 0; k <= 4; ++k) {
    const std::uint64_t t = tower(k);
    bool ok = log_star(t) == k;
    if (k < 4) ok = ok && log_star(t + 1) == k + 1;
    out.push_back({"starfn.tower", fmt::format("Tower({})", k), {}, {}, ok, k, ok ? 0.0 : -1.0,
                   fmt::format("Tower({}) = {}, log* = {}", k, t, log_star(t))});
  }
}

void verify_lemma3(const std::vector<DistX>& zoo, std::vector<Verdict>& out) {
  for (const auto& d : zoo) out.push_back(from_lemma(find_lemma3_threshold(d), d.label()));
  for (double E : {5.0, 10.0, 20.0}) {
    const DistX d = DistX::adversarial_density(E);
    const ThresholdRatio r = min_threshold_ratio(d, 0.0, E + 2.0);
    const double floor = E + 1.0 + std::log1p(-1e-9);
    out.push_back({"lemma3.plus_one", d.label(), {}, {}, r.log_ratio >= floor, r.t_star,
                   r.log_ratio - floor,
                   fmt::format("min ln ratio on [0, E+2] = {:.12g} at t = {:.12g}", r.log_ratio, r.t_star)});
  }
}

void verify_lemma5(const std::vector<DistX>& zoo, std::vector<Verdict>& out) {
  for (const auto& d : zoo) {
    if (d.expectation() < 1.0) continue;
    out.push_back(from_lemma(check_two_threshold_lemma(d), d.label()));
  }
}

void verify_lemma9(const std::vector<DistX>& zoo, std::vector<Verdict>& out) {
  for (const auto& d : zoo) {
    const double ex = d.expectation();
    std::vector<double> Es{std::max(ex, 5.0)};
    const double alt = std::ceil(ex) + 3.0;
    if (alt >= std::max(ex, 5.0) && alt != Es[0]) Es.push_back(alt);
    for (double E : Es) {
      Verdict v = from_lemma(check_core_lemma(d, E), d.label());
      v.detail = fmt::format("E = {:g}; {}", E, v.detail);
      out.push_back(std::move(v));
    }
  }
}

void verify_cor10(const std::vector<DistX>& zoo, std::vector<Verdict>& out) {
  for (const auto& d : zoo) {
    const double E = std::max(d.expectation(), 5.0);
    for (RuntimeLaw law : kLaws) {
      const double p = block_success_prob({d, law}, E);
      out.push_back({"cor10", d.label(), to_string(law), fmt::format("block_for_E(E={:g})", E),
                     p >= 0.75, std::nullopt, p - 0.75,
                     fmt::format("block success probability {:.12g}", p)});
    }
  }
}

void verify_bounds(const std::vector<DistX>& zoo, std::vector<Verdict>& out) {
  auto add = [&](const bounds::BoundCheck& b) {
    std::string detail = b.detail.empty()
                             ? fmt::format("cost {:.12g} (+{:.3g}), ln bound {:.12g}", b.cost,
                                           b.tail_bound, b.log_bound)
                             : b.detail;
    out.push_back({"bounds." + b.check, b.distribution, to_string(b.law), b.schedule, b.holds,
                   std::nullopt, b.margin, std::move(detail)});
  };
  for (const auto& b : bounds::check_upper_bounds(zoo)) add(b);
  for (const auto& b : bounds::check_negative_results()) add(b);
}

}  // namespace

bool is_verify_scope(const std::string& scope) {
  return std::any_of(std::begin(kScopes), std::end(kScopes), [&](const char* s) { return scope == s; });
}

std::vector<Verdict> run_verify(const std::string& scope, double lambda_coefficient) {
  if (!is_verify_scope(scope)) throw ConfigError(fmt::format("unknown verify scope \"{}\"", scope));
  const std::vector<DistX> zoo = builtin_zoo();
  const bool all = scope == "all";
  std::vector<Verdict> out;
  if (all || scope == "starfn") verify_starfn(lambda_coefficient, out);
  if (all || scope == "lemma3") verify_lemma3(zoo, out);
  if (all || scope == "lemma5") verify_lemma5(zoo, out);
  if (all || scope == "lemma9") verify_lemma9(zoo, out);
  if (all || scope == "cor10") verify_cor10(zoo, out);
  if (all || scope == "bounds") verify_bounds(zoo, out);
  return out;
}

std::string failure_message(const Verdict& v) {
  std::string where = v.subject;
  if (!v.law.empty()) where += " law=" + v.law;
  if (!v.schedule.empty()) where += " schedule=" + v.schedule;
  return fmt::format("FAIL {} {} margin={:.6g}: {}", v.check, where, v.margin, v.detail);
}

}  // namespace vegas::cli
