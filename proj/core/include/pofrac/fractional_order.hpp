#pragma once

#include <stdexcept>

namespace pofrac {

// Fractional order of the evolution equation, 0 < alpha <= 1.
class FractionalOrder {
 public:
  explicit FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0) || !(alpha <= 1.0))
      throw std::invalid_argument(
          "FractionalOrder: alpha must satisfy 0 < alpha <= 1");
  }

  double value() const noexcept { return alpha_; }

 private:
  double alpha_;
};

}  // namespace pofrac
