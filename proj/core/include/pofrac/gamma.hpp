#pragma once

namespace pofrac {

// Gamma function by the Lanczos coefficient approximation (g = 7, 9 terms),
// accurate to about 15 significant digits for positive arguments. Negative
// non-integer arguments go through the reflection formula. Throws
// std::domain_error at the poles x = 0, -1, -2, ...
double gamma_fn(double x);

// log(Gamma(x)) for x > 0. Throws std::domain_error otherwise.
double log_gamma(double x);

// 1/Gamma(x) for any real x; returns 0 at the poles. Needed by asymptotic
// expansions that walk through negative Gamma arguments.
double reciprocal_gamma(double x);

}  // namespace pofrac
