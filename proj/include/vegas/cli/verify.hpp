#pragma once

// The invariant suite behind `vegas_restart verify`, run over the built-in zoo.

#include <optional>
#include <string>
#include <vector>

#include "vegas/starfn.hpp"

namespace vegas::cli {

struct Verdict {
  std::string check;    // e.g. lemma9, starfn.sum, bounds.universal
  std::string subject;  // distribution label or x value
  std::string law;      // empty when law-independent
  std::string schedule; // empty unless a schedule is involved
  bool holds = false;
  std::optional<double> witness;
  double margin = 0.0;
  std::string detail;
};

// Scopes: all, starfn, lemma3, lemma5, lemma9, cor10, bounds.
bool is_verify_scope(const std::string& scope);
std::vector<Verdict> run_verify(const std::string& scope,
                                double lambda_coefficient = starfn::kLambdaCoefficient);

// One line naming the check, subject, law and margin.
std::string failure_message(const Verdict& v);

}  // namespace vegas::cli
