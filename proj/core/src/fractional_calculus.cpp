#include "pofrac/fractional_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pofrac/gamma.hpp"

namespace pofrac {

namespace {

void check_in_range(const SampledFunction& phi, double t, const char* who) {
  if (!(t >= 0.0) || t > phi.horizon() * (1.0 + 1e-15))
    throw std::domain_error(std::string(who) +
                            ": t outside the sampled grid range");
}

}  // namespace

SampledFunction::SampledFunction(std::vector<double> grid,
                                 std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.size() != values_.size() || grid_.size() < 2)
    throw std::invalid_argument(
        "SampledFunction: grid and values must have equal length >= 2");
  if (grid_.front() != 0.0)
    throw std::invalid_argument("SampledFunction: grid must start at 0");
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    if (!(grid_[i + 1] > grid_[i]))
      throw std::invalid_argument(
          "SampledFunction: grid must be strictly increasing");
  }
  for (double v : values_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("SampledFunction: values must be finite");
  }
}

SampledFunction SampledFunction::from_callable(
    const std::function<double(double)>& f, double horizon, int n_intervals) {
  if (!(horizon > 0.0) || n_intervals < 1)
    throw std::invalid_argument("SampledFunction::from_callable: bad grid spec");
  std::vector<double> g(static_cast<std::size_t>(n_intervals) + 1);
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    g[i] = horizon * static_cast<double>(i) / n_intervals;
    v[i] = f(g[i]);
  }
  g.front() = 0.0;
  g.back() = horizon;
  return SampledFunction(std::move(g), std::move(v));
}

double SampledFunction::value_at(double t) const {
  check_in_range(*this, t, "SampledFunction::value_at");
  auto it = std::upper_bound(grid_.begin(), grid_.end(), t);
  std::size_t j = (it == grid_.begin()) ? 0 : (it - grid_.begin() - 1);
  if (j + 1 >= grid_.size()) j = grid_.size() - 2;
  const double w = (t - grid_[j]) / (grid_[j + 1] - grid_[j]);
  return values_[j] + w * (values_[j + 1] - values_[j]);
}

double SampledFunction::slope_at(double t) const {
  check_in_range(*this, t, "SampledFunction::slope_at");
  auto it = std::lower_bound(grid_.begin(), grid_.end(), t);
  std::size_t j = (it == grid_.begin()) ? 1 : (it - grid_.begin());
  if (j >= grid_.size()) j = grid_.size() - 1;
  return (values_[j] - values_[j - 1]) / (grid_[j] - grid_[j - 1]);
}

double fractional_integral(double beta, const SampledFunction& phi, double t) {
  if (!(beta > 0.0))
    throw std::invalid_argument("fractional_integral: beta must be positive");
  check_in_range(phi, t, "fractional_integral");
  if (t == 0.0) return 0.0;

  const auto& g = phi.grid();
  const auto& v = phi.values();
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < g.size() && g[j] < t; ++j) {
    const double s_lo = g[j];
    const double s_hi = std::min(g[j + 1], t);
    const double slope = (v[j + 1] - v[j]) / (g[j + 1] - g[j]);
    // On [s_lo, s_hi]: phi(s) = v_j + slope (s - s_lo); with tau = t - s,
    //   int tau^{beta-1} phi ds
    //     = phi(at s = t extended) * (tau0^b - tau1^b)/b
    //       - slope * (tau0^{b+1} - tau1^{b+1})/(b+1),
    // where tau0 = t - s_lo >= tau1 = t - s_hi >= 0.
    const double tau0 = t - s_lo;
    const double tau1 = std::max(t - s_hi, 0.0);
    const double p0 = std::pow(tau0, beta), p1 = std::pow(tau1, beta);
    const double q0 = p0 * tau0, q1 = p1 * tau1;
    const double phi_at_t = v[j] + slope * (t - s_lo);
    acc += phi_at_t * (p0 - p1) / beta - slope * (q0 - q1) / (beta + 1.0);
  }
  return acc / gamma_fn(beta);
}

double caputo_derivative(double beta, const SampledFunction& phi, double t) {
  if (!(beta > 0.0) || beta > 1.0)
    throw std::invalid_argument("caputo_derivative: beta must be in (0, 1]");
  if (t == 0.0)
    throw std::domain_error(
        "caputo_derivative: t = 0 not supported (limit point of the operator)");
  check_in_range(phi, t, "caputo_derivative");
  if (beta == 1.0) return phi.slope_at(t);

  const auto& g = phi.grid();
  const auto& v = phi.values();
  const double om = 1.0 - beta;
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < g.size() && g[j] < t; ++j) {
    const double s_hi = std::min(g[j + 1], t);
    const double slope = (v[j + 1] - v[j]) / (g[j + 1] - g[j]);
    const double tau0 = t - g[j];
    const double tau1 = std::max(t - s_hi, 0.0);
    acc += slope * (std::pow(tau0, om) - std::pow(tau1, om));
  }
  return acc / gamma_fn(2.0 - beta);
}

}  // namespace pofrac
