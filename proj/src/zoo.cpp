#include "vegas/zoo.hpp"

namespace vegas {

std::vector<DistX> builtin_zoo() {
  std::vector<DistX> zoo;
  for (double E : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) zoo.push_back(two_point(E));
  for (double E : {5.0, 10.0, 20.0}) {
    // E + 5 == 2E at E = 5
    std::vector<double> ts{E, E + 1.0, E + 5.0};
    if (2.0 * E != E + 5.0) ts.push_back(2.0 * E);
    for (double t : ts) zoo.push_back(fixed_t_counterexample(E, t));
  }
  for (double E : {5.0, 10.0, 20.0}) zoo.push_back(DistX::adversarial_density(E));
  zoo.push_back(variance_counterexample(5.0, 10.0));
  for (double c : {0.0, 1.0, 5.0, 10.0, 20.0}) zoo.push_back(DistX::constant(c));
  return zoo;
}

}  // namespace vegas
