#include "pofrac/gronwall.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/mittag_leffler.hpp"

namespace pofrac {

namespace {

void require_nonneg_samples(const SampledFunction& f, const char* who) {
  for (double v : f.values())
    if (v < 0.0)
      throw std::invalid_argument(std::string(who) +
                                  ": sampled values must be nonnegative");
}

double multiplier_at(const GronwallProblem& problem, double t) {
  if (std::holds_alternative<double>(problem.q))
    return std::get<double>(problem.q);
  return std::get<SampledFunction>(problem.q).value_at(t);
}

// Core series: value = h(t) + sum_{k=1}^{n} (b Gamma(beta))^k I^{k beta} h(t).
double series_bound(const GronwallProblem& problem, double b, double t,
                    int n_terms, double tol, GronwallSeriesInfo* info) {
  const double beta = problem.beta;
  const double ht = problem.h_at(t);
  if (b < 0.0)
    throw std::invalid_argument("gronwall bound: multiplier must be nonnegative");
  if (b == 0.0 || t == 0.0) {
    if (info) *info = {ht, 0.0, 0};
    return ht;
  }

  const bool h_const = std::holds_alternative<double>(problem.h);
  const double h0 = h_const ? std::get<double>(problem.h) : 0.0;
  const double ln_bg = std::log(b) + log_gamma(beta);
  const double ln_t = std::log(t);

  auto term = [&](int k) -> double {
    if (h_const) {
      // (b G(beta))^k h0 t^{k beta} / Gamma(k beta + 1), in log space.
      if (h0 == 0.0) return 0.0;
      const double ln =
          k * ln_bg + k * beta * ln_t - log_gamma(k * beta + 1.0);
      return h0 * std::exp(ln);
    }
    const double frac = fractional_integral(
        k * beta, std::get<SampledFunction>(problem.h), t);
    return std::exp(k * ln_bg) * frac;
  };

  double sum = ht;
  double last = 0.0;
  int used = 0;
  for (int k = 1; k <= n_terms; ++k) {
    last = term(k);
    if (!std::isfinite(last))
      throw numerical_failure("gronwall bound: series term overflow", sum,
                              std::numeric_limits<double>::infinity());
    sum += last;
    used = k;
  }
  // Remainder: one extra term and a geometric tail estimate. The term ratio
  // decays superexponentially once Gamma(k beta) dominates, so when the ratio
  // is below 1 the geometric bound is valid from there on.
  const double next = term(n_terms + 1);
  double remainder;
  if (last > 0.0 && next < last) {
    const double r = next / last;
    remainder = next / (1.0 - r);
  } else if (next == 0.0) {
    remainder = 0.0;
  } else {
    remainder = std::numeric_limits<double>::infinity();
  }
  if (!(remainder <= tol * std::max(1.0, std::abs(sum))))
    throw numerical_failure(
        "gronwall bound: series remainder above tolerance; increase n_terms",
        sum, remainder);
  if (info) *info = {sum, remainder, used};
  return sum;
}

}  // namespace

void GronwallProblem::validate() const {
  if (!(beta > 0.0))
    throw std::invalid_argument("GronwallProblem: order beta must be positive");
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("GronwallProblem: horizon must be finite positive");
  if (std::holds_alternative<double>(h)) {
    if (std::get<double>(h) < 0.0)
      throw std::invalid_argument("GronwallProblem: forcing must be nonnegative");
  } else {
    require_nonneg_samples(std::get<SampledFunction>(h), "GronwallProblem.h");
  }
  if (std::holds_alternative<double>(q)) {
    if (std::get<double>(q) < 0.0)
      throw std::invalid_argument("GronwallProblem: multiplier must be nonnegative");
  } else {
    const auto& qs = std::get<SampledFunction>(q);
    require_nonneg_samples(qs, "GronwallProblem.q");
    for (std::size_t i = 0; i + 1 < qs.values().size(); ++i)
      if (qs.values()[i + 1] < qs.values()[i])
        throw std::invalid_argument(
            "GronwallProblem: sampled multiplier must be nondecreasing");
  }
}

double GronwallProblem::h_at(double t) const {
  if (std::holds_alternative<double>(h)) return std::get<double>(h);
  return std::get<SampledFunction>(h).value_at(t);
}

double gronwall_bound_constant_q(const GronwallProblem& problem, double t,
                                 int n_terms, double tol,
                                 GronwallSeriesInfo* info) {
  problem.validate();
  if (!std::holds_alternative<double>(problem.q))
    throw std::invalid_argument(
        "gronwall_bound_constant_q: problem has a non-constant multiplier");
  if (n_terms < 1)
    throw std::invalid_argument("gronwall bound: n_terms must be positive");
  if (!(t >= 0.0) || t > problem.horizon * (1.0 + 1e-15))
    throw std::domain_error("gronwall bound: t outside [0, T]");
  return series_bound(problem, std::get<double>(problem.q), t, n_terms, tol,
                      info);
}

double gronwall_bound_ml(double h0, double q_val, double beta, double t) {
  if (h0 < 0.0 || q_val < 0.0 || t < 0.0)
    throw std::invalid_argument("gronwall_bound_ml: arguments must be nonnegative");
  if (!(beta > 0.0))
    throw std::invalid_argument("gronwall_bound_ml: order must be positive");
  if (h0 == 0.0) return 0.0;
  return h0 * mittag_leffler(beta, q_val * gamma_fn(beta) * std::pow(t, beta));
}

double gronwall_bound_general(const GronwallProblem& problem, double t,
                              int n_terms, double tol,
                              GronwallSeriesInfo* info) {
  problem.validate();
  if (n_terms < 1)
    throw std::invalid_argument("gronwall bound: n_terms must be positive");
  if (!(t >= 0.0) || t > problem.horizon * (1.0 + 1e-15))
    throw std::domain_error("gronwall bound: t outside [0, T]");
  return series_bound(problem, multiplier_at(problem, t), t, n_terms, tol,
                      info);
}

}  // namespace pofrac
