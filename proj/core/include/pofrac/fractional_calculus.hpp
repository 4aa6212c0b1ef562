#pragma once

#include <functional>
#include <vector>

namespace pofrac {

// Discrete carrier for a function of time: strictly increasing grid starting
// at 0, one value per node, piecewise-linear interpolation between nodes.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> grid, std::vector<double> values);

  // Uniform grid over [0, horizon] with n+1 nodes, sampled from f.
  static SampledFunction from_callable(const std::function<double(double)>& f,
                                       double horizon, int n_intervals);

  const std::vector<double>& grid() const noexcept { return grid_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double horizon() const noexcept { return grid_.back(); }

  // Linear interpolant; t must lie in [0, horizon].
  double value_at(double t) const;

  // Slope of the segment containing t (left segment at interior nodes).
  double slope_at(double t) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
};

// Riemann-Liouville integral of order beta > 0 of the piecewise-linear
// interpolant, evaluated at t:
//   (1/Gamma(beta)) \int_0^t (t-s)^{beta-1} phi(s) ds.
// The weakly singular kernel is integrated exactly on each subinterval.
double fractional_integral(double beta, const SampledFunction& phi, double t);

// Caputo derivative of order beta in (0, 1] at t > 0, computed as the
// order-(1-beta) fractional integral of the interpolant's derivative; exact
// for the piecewise-linear interpolant. beta = 1 returns the interpolant
// slope. t = 0 is rejected (the operator is defined there only as a limit).
double caputo_derivative(double beta, const SampledFunction& phi, double t);

}  // namespace pofrac
