#pragma once

#include <functional>

namespace pofrac {

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int evaluations = 0;
};

// Adaptive Gauss-Kronrod (7,15) bisection on [a, b]. The target is
// abs_tol + rel_tol * |integral|, distributed over subintervals by length.
// Throws numerical_failure if the budget (max_depth per branch) is exhausted
// while the estimated error still exceeds the target.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b,
                              double abs_tol = 1e-10,
                              double rel_tol = 1e-12,
                              int max_depth = 48);

// Integral over (0, inf): split at 1, map the tail with theta -> 1/u so both
// pieces live on finite intervals.
QuadResult integrate_zero_to_inf(const std::function<double(double)>& f,
                                 double abs_tol = 1e-8,
                                 double rel_tol = 0.0);

}  // namespace pofrac
