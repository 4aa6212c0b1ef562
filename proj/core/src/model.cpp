#include "pofrac/model.hpp"

#include <cmath>
#include <stdexcept>

#include "pofrac/errors.hpp"

namespace pofrac {

namespace {

void require_nonneg(double value, const char* name) {
  if (!(value >= 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string("ModelParams: field '") + name +
                                "' must be a nonnegative finite real");
}

void require_pair(double coeff, const char* coeff_name, double denom,
                  const char* denom_name) {
  if (coeff > 0.0 && !(denom > 0.0))
    throw singular_parameter(std::string("ModelParams: '") + denom_name +
                             "' must be positive while '" + coeff_name +
                             "' is positive");
}

double safe_div(double num, double den, const char* denom_name) {
  if (den == 0.0)
    throw singular_parameter(std::string("rhs: denominator through '") +
                             denom_name + "' is zero");
  return num / den;
}

}  // namespace

void ModelParams::validate() const {
  require_nonneg(c0, "c0");
  require_nonneg(c1, "c1");
  require_nonneg(c2, "c2");
  require_nonneg(c3, "c3");
  require_nonneg(c4, "c4");
  require_nonneg(h, "h");
  require_nonneg(H, "H");
  require_nonneg(delta, "delta");
  require_nonneg(v, "v");
  require_nonneg(B, "B");
  require_nonneg(beta_pred, "beta_pred");
  require_nonneg(xi, "xi");
  require_nonneg(m, "m");
  require_nonneg(gamma, "gamma");
  require_nonneg(sigma, "sigma");
  require_nonneg(mu, "mu");
  require_pair(H, "H", c0, "c0");
  require_pair(B, "B", c1, "c1");
  require_pair(delta, "delta", c2, "c2");
  require_pair(v, "v", c3, "c3");
  require_pair(beta_pred, "beta_pred", h, "h");
  require_pair(xi * beta_pred, "xi*beta_pred", c4, "c4");
  require_pair(xi * beta_pred, "xi*beta_pred", h, "h");
}

ModelParams ModelParams::all_ones() {
  ModelParams p;
  p.c0 = p.c1 = p.c2 = p.c3 = p.c4 = p.h = 1.0;
  p.H = p.delta = p.v = p.B = p.beta_pred = p.xi = 1.0;
  p.m = p.gamma = p.sigma = p.mu = 1.0;
  return p;
}

State::State(double x1, double x2, double x3) : v_{x1, x2, x3} {
  for (double c : v_) {
    if (!(c >= 0.0) || !std::isfinite(c))
      throw std::invalid_argument("State: components must be nonnegative reals");
  }
}

Vec3 rhs_nonlinear(const ModelParams& p, const Vec3& x) {
  const double x1 = x[0], x2 = x[1], x3 = x[2];
  double f1 = 0.0, f2 = 0.0, f3 = 0.0;
  if (p.H > 0.0) f1 += p.H * p.c0 * safe_div(x2, x1 + p.c0, "c0");
  if (p.delta > 0.0) f1 -= p.delta * safe_div(x1 * x2, x1 + p.c2, "c2");
  if (p.v > 0.0) f1 -= p.v * safe_div(x1 * x3, x1 + p.c3, "c3");
  if (p.B > 0.0) f2 += p.B * safe_div(x1, x1 + p.c1, "c1") * x2;
  f2 -= p.gamma * x2 * x2;
  if (p.beta_pred > 0.0) f2 -= p.beta_pred * safe_div(x2 * x3, x2 + p.h, "h");
  if (p.xi > 0.0 && p.beta_pred > 0.0) {
    const double d = (x1 * x1 + p.c4 * p.c4) * (x2 + p.h);
    f3 += p.xi * p.beta_pred * safe_div(x1 * x1 * x2 * x3, d, "c4/h");
  }
  return {f1, f2, f3};
}

Vec3 rhs_full(const ModelParams& p, const Vec3& x) {
  Vec3 f = rhs_nonlinear(p, x);
  f[0] -= p.m * x[0];
  f[1] -= p.sigma * x[1];
  f[2] -= p.mu * x[2];
  return f;
}

double one_norm(const Vec3& x) {
  return std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]);
}

}  // namespace pofrac
