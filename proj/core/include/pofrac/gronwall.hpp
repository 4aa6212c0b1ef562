#pragma once

#include <optional>
#include <variant>

#include "pofrac/fractional_calculus.hpp"

namespace pofrac {

// Data of the singular Gronwall inequality
//   p(t) <= h(t) + q(t) \int_0^t (t-s)^{beta-1} p(s) ds  on [0, T].
// h is a nonnegative forcing (constant or sampled); q is a nonnegative
// nondecreasing multiplier (constant b or sampled).
struct GronwallProblem {
  std::variant<double, SampledFunction> h;
  std::variant<double, SampledFunction> q;
  double beta = 1.0;
  double horizon = 1.0;

  void validate() const;
  double h_at(double t) const;
};

struct GronwallSeriesInfo {
  double value = 0.0;
  double remainder = 0.0;
  int terms_used = 0;
};

// Constant-multiplier bound: h(t) + sum_{k>=1} (b Gamma(beta))^k I^{k beta}
// h(t), truncated at n_terms with a geometric remainder estimate. Throws
// numerical_failure (suggesting a larger n_terms) if the remainder exceeds
// tol. The returned value is >= the true bound minus the reported remainder.
double gronwall_bound_constant_q(const GronwallProblem& problem, double t,
                                 int n_terms, double tol = 1e-10,
                                 GronwallSeriesInfo* info = nullptr);

// Nondecreasing-forcing closed form: h0 * E_beta(q Gamma(beta) t^beta).
double gronwall_bound_ml(double h0, double q_val, double beta, double t);

// General nondecreasing multiplier: q is frozen at the evaluation time, as in
// the source inequality's display; reduces exactly to the constant-q bound
// when q is constant. Non-monotone sampled q raises std::invalid_argument.
double gronwall_bound_general(const GronwallProblem& problem, double t,
                              int n_terms, double tol = 1e-10,
                              GronwallSeriesInfo* info = nullptr);

}  // namespace pofrac
