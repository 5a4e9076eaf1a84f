#pragma once

#include <vector>

#include "vegas/distx.hpp"

namespace vegas {

// The built-in test distributions: two_point(E) for E in {1,2,4,8,16,32},
// fixed_t_counterexample(E, t) for E in {5,10,20} and t in {E, E+1, E+5, 2E} (deduplicated),
// adversarial_density(E) for E in {5,10,20}, variance_counterexample(5, 10)
// and constants {0, 1, 5, 10, 20}.
std::vector<DistX> builtin_zoo();

}  // namespace vegas
