#pragma once

// Counter-keyed random streams: every (seed, trial, attempt) triple owns an
// independent SplitMix64 sequence, so results never depend on how trials are
// distributed over workers.

#include <cstdint>
#include <limits>

namespace vegas {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : state_(splitmix64_mix(seed)) {}

  Rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t attempt)
      : state_(key(seed, trial, attempt)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64_mix(state_);
  }

  // Uniform on (0, 1]; never returns 0 so log(u) is always finite.
  double uniform_pos() {
    return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t key(std::uint64_t seed, std::uint64_t trial,
                                     std::uint64_t attempt) {
    std::uint64_t h = splitmix64_mix(seed ^ 0x6a09e667f3bcc909ULL);
    h = splitmix64_mix(h ^ (trial + 0xbb67ae8584caa73bULL));
    h = splitmix64_mix(h ^ (attempt + 0x3c6ef372fe94f82bULL));
    return h;
  }

  std::uint64_t state_;
};

// Hands out the per-attempt streams of one trial.
class TrialStreams {
 public:
  TrialStreams(std::uint64_t seed, std::uint64_t trial) : seed_(seed), trial_(trial) {}

  Rng attempt(std::uint64_t index) const { return Rng(seed_, trial_, index); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t trial() const { return trial_; }

 private:
  std::uint64_t seed_;
  std::uint64_t trial_;
};

}  // namespace vegas
