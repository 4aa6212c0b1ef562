#pragma once

#include <stdexcept>
#include <string>

namespace pofrac {

// Raised when an iterative or series evaluation cannot certify the requested
// accuracy within its budget. Carries the best partial result and the error
// bound that was achieved so callers can decide whether it is still usable.
class numerical_failure : public std::runtime_error {
 public:
  numerical_failure(const std::string& what, double partial_sum, double error_bound)
      : std::runtime_error(what), partial_(partial_sum), bound_(error_bound) {}

  double partial_sum() const noexcept { return partial_; }
  double error_bound() const noexcept { return bound_; }

 private:
  double partial_;
  double bound_;
};

// A half-saturation constant is zero while the corresponding rate coefficient
// is positive, so a denominator (or a Lipschitz constant) is undefined.
class singular_parameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The density zeta_alpha degenerates to a point mass at alpha = 1.
class degenerate_order : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A trajectory left the admissible region (NaN, or negative beyond slack).
class invariant_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pofrac
