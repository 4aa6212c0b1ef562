#include "pofrac/mittag_leffler.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/quadrature.hpp"

namespace pofrac {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesSwitch = 5.0;   // |z| below which the series is tried first
constexpr int kMaxTerms = 8000;
// Certification target: absolute for small values, relative otherwise.
constexpr double kTargetTol = 1e-13;

double target_for(double magnitude) {
  return kTargetTol * std::max(1.0, magnitude);
}

struct SeriesOutcome {
  double value = 0.0;
  double err = 0.0;
  int terms = 0;
  bool certified = false;
  bool overflowed = false;
};

// Sum_{k>=0} z^k / Gamma(alpha k + beta) with Kahan compensation. Terms are
// formed in log space so large Gamma arguments cannot overflow prematurely.
// The error bound tracks rounding (2 eps * sum of |terms|) plus truncation.
SeriesOutcome ml_series(double alpha, double beta, double z) {
  SeriesOutcome out;
  const double t0 = reciprocal_gamma(beta);
  double sum = t0, comp = 0.0, sum_abs = std::abs(t0);
  if (z == 0.0) {
    out.value = t0;
    out.err = kEps * std::abs(t0);
    out.terms = 1;
    out.certified = true;
    return out;
  }
  const double ln_az = std::log(std::abs(z));
  const bool negative = z < 0.0;
  double last_abs = std::abs(t0);
  int tiny_streak = 0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    const double ln_t = k * ln_az - log_gamma(alpha * k + beta);
    if (ln_t > 705.0) {
      out.overflowed = true;
      out.value = sum;
      out.terms = k;
      out.err = std::numeric_limits<double>::infinity();
      return out;
    }
    double t = std::exp(ln_t);
    if (negative && (k & 1)) t = -t;
    const double y = t - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    sum_abs += std::abs(t);
    out.terms = k + 1;
    // Stop once terms are persistently below round-off relevance and the
    // magnitude peak has clearly passed.
    const double at = std::abs(t);
    if (at < 1e-18 * std::max(1.0, std::abs(sum)) && at <= last_abs) {
      if (++tiny_streak >= 3) {
        out.value = sum;
        out.err = 2.0 * kEps * sum_abs + at;
        out.certified = out.err <= target_for(std::abs(sum));
        return out;
      }
    } else {
      tiny_streak = 0;
    }
    last_abs = at;
  }
  out.value = sum;
  out.err = 2.0 * kEps * sum_abs + last_abs;
  out.certified = false;
  return out;
}

// Complex variant used by the order-halving route. Same certification logic.
struct ComplexSeriesOutcome {
  std::complex<double> value{0.0, 0.0};
  double err = 0.0;
  int terms = 0;
  bool certified = false;
};

ComplexSeriesOutcome ml_series_complex(double alpha, double beta,
                                       std::complex<double> z) {
  ComplexSeriesOutcome out;
  std::complex<double> sum(reciprocal_gamma(beta), 0.0);
  double sum_abs = std::abs(sum);
  const double az = std::abs(z);
  if (az == 0.0) {
    out.value = sum;
    out.err = kEps * sum_abs;
    out.terms = 1;
    out.certified = true;
    return out;
  }
  const double ln_az = std::log(az);
  std::complex<double> phase = z / az;  // unit modulus
  std::complex<double> rot(1.0, 0.0);
  double last_abs = sum_abs;
  int tiny_streak = 0;
  for (int k = 1; k <= kMaxTerms; ++k) {
    rot *= phase;
    const double ln_t = k * ln_az - log_gamma(alpha * k + beta);
    if (ln_t > 705.0) {
      out.err = std::numeric_limits<double>::infinity();
      return out;
    }
    const double mag = std::exp(ln_t);
    sum += mag * rot;
    sum_abs += mag;
    out.terms = k + 1;
    if (mag < 1e-18 * std::max(1.0, std::abs(sum)) && mag <= last_abs) {
      if (++tiny_streak >= 3) {
        out.value = sum;
        out.err = 2.0 * kEps * sum_abs + mag;
        out.certified = out.err <= target_for(std::abs(sum));
        return out;
      }
    } else {
      tiny_streak = 0;
    }
    last_abs = mag;
  }
  return out;
}

// Branch-cut integral of the inverse Mellin-Barnes representation for real
// z < 0. Valid for 0 < alpha < 2 (alpha != 1) and beta < 1 + alpha; for
// 1 < alpha < 2 the residue pair must be added by the caller.
//
// After r = u^alpha and u = v^q the integrand is bounded at the origin and
// decays like exp(-v^q).
double ml_cut_integral(double alpha, double beta, double z, int* evals) {
  const double spb = std::sin(M_PI * (1.0 - beta));
  const double spba = std::sin(M_PI * (1.0 - beta + alpha));
  const double cpa = std::cos(M_PI * alpha);
  // q makes the prefactor power e0 at least 1 and keeps u^alpha = v^{q alpha}
  // differentiable at 0, so the substituted integrand has no singular
  // derivatives left for the quadrature to chase.
  const double q = std::max(2.0 / (1.0 + alpha - beta), 1.0 / alpha);
  const double e0 = q * (alpha - beta + 1.0) - 1.0;  // >= 1 by choice of q
  const double z2 = z * z;
  auto integrand = [&](double v) -> double {
    if (v <= 0.0) {
      if (e0 > 0.0) return 0.0;
      return (q / M_PI) * (-z * spba) / z2;
    }
    const double u = std::pow(v, q);
    if (u > 710.0) return 0.0;
    const double ua = std::pow(u, alpha);
    const double num = ua * spb - z * spba;
    const double den = ua * ua - 2.0 * ua * z * cpa + z2;
    return (q / M_PI) * std::pow(v, e0) * std::exp(-u) * num / den;
  };
  const double v_max = std::pow(50.0, 1.0 / q);
  QuadResult res = integrate_adaptive(integrand, 0.0, v_max, 1e-15, 1e-14);
  if (evals) *evals = res.evaluations;
  return res.value;
}

// Residue pair picked up on the principal sheet when 1 < alpha < 2, z < 0.
double ml_pole_pair(double alpha, double beta, double z) {
  const double x = -z;
  const double w = std::pow(x, 1.0 / alpha);
  const double re = w * std::cos(M_PI / alpha);
  const double im = w * std::sin(M_PI / alpha);
  return (2.0 / alpha) * std::pow(x, (1.0 - beta) / alpha) * std::exp(re) *
         std::cos(im + M_PI * (1.0 - beta) / alpha);
}

void set_diag(MlDiagnostics* diag, MlBranch branch, int terms, double err,
              int reductions) {
  if (!diag) return;
  diag->branch = branch;
  diag->terms_used = terms;
  diag->error_bound = err;
  diag->beta_reductions = reductions;
}

[[noreturn]] void fail(const char* where, double alpha, double beta, double z,
                       const SeriesOutcome& best) {
  throw numerical_failure(
      std::string(where) + ": cannot certify tolerance for alpha=" +
          std::to_string(alpha) + " beta=" + std::to_string(beta) +
          " z=" + std::to_string(z),
      best.value, best.err);
}

double ml_impl(double alpha, double beta, double z, MlDiagnostics* diag);

// E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z lowers beta until the cut
// integral applies (beta < 1 + alpha). Only used for |z| >= 1, where the
// division is benign.
double ml_beta_reduced(double alpha, double beta, double z,
                       MlDiagnostics* diag) {
  int steps = 0;
  double b = beta;
  while (b >= 1.0 + alpha - 1e-12) {
    b -= alpha;
    ++steps;
  }
  MlDiagnostics local;
  double value = ml_impl(alpha, b, z, &local);
  // Climb back up: E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z.
  double bb = b;
  for (int i = 0; i < steps; ++i) {
    value = (value - reciprocal_gamma(bb)) / z;
    bb += alpha;
  }
  set_diag(diag, local.branch, local.terms_used, local.error_bound, steps);
  return value;
}

double ml_impl(double alpha, double beta, double z, MlDiagnostics* diag) {
  // Exact reductions first.
  if (alpha == 1.0 && beta == 1.0) {
    set_diag(diag, MlBranch::exact_reduction, 0, kEps * std::exp(z), 0);
    return std::exp(z);
  }
  if (alpha == 1.0 && beta == 2.0) {
    const double v = (z == 0.0) ? 1.0 : std::expm1(z) / z;
    set_diag(diag, MlBranch::exact_reduction, 0, kEps * std::abs(v), 0);
    return v;
  }
  if (alpha == 2.0 && (beta == 1.0 || beta == 2.0)) {
    double v;
    if (z >= 0.0) {
      const double s = std::sqrt(z);
      v = (beta == 1.0) ? std::cosh(s) : (z == 0.0 ? 1.0 : std::sinh(s) / s);
    } else {
      const double s = std::sqrt(-z);
      v = (beta == 1.0) ? std::cos(s) : std::sin(s) / s;
    }
    set_diag(diag, MlBranch::exact_reduction, 0, kEps * std::abs(v), 0);
    return v;
  }

  // Series region: always for z > 0 (positive terms, no cancellation),
  // otherwise attempted below the switch point or wherever it certifies.
  SeriesOutcome series;
  const bool try_series = z > 0.0 || std::abs(z) <= kSeriesSwitch || alpha >= 1.0;
  if (try_series) {
    series = ml_series(alpha, beta, z);
    if (series.overflowed)
      throw numerical_failure(
          "mittag_leffler: series term overflow (result exceeds double range)",
          series.value, std::numeric_limits<double>::infinity());
    if (series.certified) {
      set_diag(diag, MlBranch::power_series, series.terms, series.err, 0);
      return series.value;
    }
    if (z >= 0.0) fail("mittag_leffler", alpha, beta, z, series);
  }

  // z < 0 from here on.
  if (alpha < 1.0) {
    if (beta >= 1.0 + alpha - 1e-12) return ml_beta_reduced(alpha, beta, z, diag);
    int evals = 0;
    const double v = ml_cut_integral(alpha, beta, z, &evals);
    set_diag(diag, MlBranch::kernel_integral, evals, 1e-13 * std::max(1.0, std::abs(v)), 0);
    return v;
  }
  if (alpha == 1.0) {
    // No cut representation at alpha = 1; the certified series plus the two
    // closed forms above are the supported paths.
    fail("mittag_leffler", alpha, beta, z, series);
  }
  if (alpha < 2.0) {
    if (beta >= 1.0 + alpha - 1e-12) return ml_beta_reduced(alpha, beta, z, diag);
    int evals = 0;
    const double v = ml_pole_pair(alpha, beta, z) + ml_cut_integral(alpha, beta, z, &evals);
    set_diag(diag, MlBranch::pole_kernel, evals, 1e-13 * std::max(1.0, std::abs(v)), 0);
    return v;
  }
  // alpha == 2, general beta: order halving with a complex certified series.
  // E_{2,b}(-x) = Re E_{1,b}(i sqrt(x)).
  const std::complex<double> w(0.0, std::sqrt(-z));
  ComplexSeriesOutcome cs = ml_series_complex(1.0, beta, w);
  if (cs.certified) {
    set_diag(diag, MlBranch::complex_series, cs.terms, cs.err, 0);
    return cs.value.real();
  }
  fail("mittag_leffler", alpha, beta, z, series);
}

void validate_orders(double alpha, double beta, double z) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument("mittag_leffler: order alpha must be in (0, 2]");
  if (!(beta > 0.0))
    throw std::invalid_argument("mittag_leffler: parameter beta must be positive");
  if (!std::isfinite(z))
    throw std::invalid_argument("mittag_leffler: argument must be finite");
}

}  // namespace

double mittag_leffler(double alpha, double z, MlDiagnostics* diag) {
  validate_orders(alpha, 1.0, z);
  return ml_impl(alpha, 1.0, z, diag);
}

double mittag_leffler2(double alpha, double beta, double z,
                       MlDiagnostics* diag) {
  validate_orders(alpha, beta, z);
  return ml_impl(alpha, beta, z, diag);
}

}  // namespace pofrac
