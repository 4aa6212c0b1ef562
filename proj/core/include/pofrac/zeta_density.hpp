#pragma once

#include "pofrac/fractional_order.hpp"

namespace pofrac {

enum class ZetaBranch { wright_series, saddle_asymptotic };

struct ZetaDiagnostics {
  ZetaBranch branch = ZetaBranch::wright_series;
  int terms_used = 0;
  double error_bound = 0.0;
};

// Probability density zeta_alpha on (0, inf) whose Laplace transform is
// E_alpha(-z); equivalently the Wright-type series
//   zeta_a(t) = 1/(a pi) sum_{n>=1} (-1)^{n-1} t^{n-1} Gamma(n a + 1)
//               sin(n pi a) / n!
// with a saddle-point tail for large t where the alternating series loses all
// precision. Requires 0 < alpha < 1 strictly: alpha = 1 is a point mass and
// raises degenerate_order.
double zeta_density(FractionalOrder order, double theta,
                    ZetaDiagnostics* diag = nullptr);

struct ZetaSelfCheck {
  double normalization;     // integral of the density over (0, inf)
  double first_moment;      // integral of theta * density
  double moment_reference;  // 1 / Gamma(1 + alpha)
};

// Quadrature self-check backing the `specfun zeta-check` CLI subcommand:
// the tail is mapped by theta -> 1/u and both pieces integrated adaptively.
ZetaSelfCheck zeta_self_check(FractionalOrder order, double abs_tol = 1e-8);

}  // namespace pofrac
