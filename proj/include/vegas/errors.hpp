#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace vegas {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Parameter would push exp() outside double range.
class RangeGuardError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Internal invariant tripped (iteration cap, theorem checker returning false
// in verify mode).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class CapKind { max_attempts, max_total_cost };

inline const char* to_string(CapKind k) {
  return k == CapKind::max_attempts ? "max_attempts" : "max_total_cost";
}

class CapExceeded : public std::runtime_error {
 public:
  CapExceeded(CapKind which, std::uint64_t attempts, double total_cost)
      : std::runtime_error(std::string("cap exceeded: ") + to_string(which)),
        which_(which),
        attempts_(attempts),
        total_cost_(total_cost) {}

  CapKind which() const noexcept { return which_; }
  std::uint64_t attempts() const noexcept { return attempts_; }
  double total_cost() const noexcept { return total_cost_; }

 private:
  CapKind which_;
  std::uint64_t attempts_;
  double total_cost_;
};

// The renewal series could not be certified within the attempt cap.
class TailNotConvergent : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vegas
