#pragma once

namespace pofrac {

// Which evaluation path produced the returned value.
enum class MlBranch {
  exact_reduction,   // alpha in {1, 2} with a closed form (exp, expm1, cos, ...)
  power_series,      // truncated series with cancellation-certified error
  kernel_integral,   // real integral representation, 0 < alpha < 1, z < 0
  pole_kernel,       // residue pair + kernel integral, 1 < alpha < 2, z < 0
  complex_series,    // order-halving with a complex certified series
};

struct MlDiagnostics {
  MlBranch branch = MlBranch::power_series;
  int terms_used = 0;          // series terms or quadrature evaluations
  double error_bound = 0.0;    // certified absolute error of the result
  int beta_reductions = 0;     // recurrence steps applied to lower beta
};

// One-parameter Mittag-Leffler function E_alpha(z), 0 < alpha <= 2.
//
// Strategy: power series with a running cancellation bound for small |z|
// (switch point 5) and for any z > 0; for z < 0 the integral representation
// (plus a residue pair when alpha > 1). Throws numerical_failure when no
// branch certifies the accuracy target, carrying the partial sum and the
// achieved bound.
double mittag_leffler(double alpha, double z, MlDiagnostics* diag = nullptr);

// Two-parameter generalization E_{alpha,beta}(z), beta > 0. Same strategy;
// beta is first lowered into the representable band by the exact recurrence
// E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z when needed.
double mittag_leffler2(double alpha, double beta, double z,
                       MlDiagnostics* diag = nullptr);

}  // namespace pofrac
