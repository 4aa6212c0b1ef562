#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pofrac/fractional_order.hpp"
#include "pofrac/model.hpp"

namespace pofrac {

enum class SolverMethod { mild_picard, abm, rk4_classical };

const char* to_string(SolverMethod m);
SolverMethod solver_method_from_string(const std::string& name);

struct SolverConfig {
  explicit SolverConfig(FractionalOrder o) : order(o) {}

  FractionalOrder order;
  double horizon = 1.0;
  int n_steps = 256;
  SolverMethod method = SolverMethod::abm;
  int picard_max_iter = 30;
  double picard_tol = 1e-10;
  // Constant K of the iterate envelope M = alpha K L ||x0||_1; defaults to
  // 1/Gamma(1+alpha), the first moment of the density kernel.
  std::optional<double> envelope_constant_K;
  // Lipschitz constant used by the envelope; when absent the diagnostics
  // carry the iterate differences but no envelope values.
  std::optional<double> envelope_lipschitz_L;

  void validate() const;
  double resolved_envelope_K() const;
};

struct Trajectory {
  std::vector<double> times;   // uniform, times[0] = 0, times[N] = T
  std::vector<Vec3> states;    // states[0] equals the initial condition
  std::string method;
  double alpha = 1.0;
  std::string params_fingerprint;
};

struct PicardDiagnostics {
  // sup_differences[n] = max over the grid of ||x^{(n+1)} - x^{(n)}||_1,
  // where x^{(0)} is the constant initial guess. envelope[n] is the bound
  // M^n T^{n alpha} Gamma(alpha)^n / Gamma(n alpha + 1), defined for n >= 1
  // (NaN at n = 0 and whenever no Lipschitz constant was supplied).
  std::vector<double> sup_differences;
  std::vector<double> envelope;
  double M = 0.0;
  double K_used = 0.0;
  double lipschitz_L = 0.0;
  bool converged = false;
  int iterations_used = 0;
};

// Fractional Adams-Bashforth-Moulton predictor-corrector (product-rectangle
// predictor, product-trapezoid corrector, full memory, O(N^2)).
Trajectory solve_abm(const ModelParams& p, const State& x0,
                     const SolverConfig& cfg);

// Picard iteration on the mild formulation. The diagonal linear part lets the
// density integrals collapse to Mittag-Leffler kernels, so only the time
// convolution is discretized (exact product integration of the singular
// weight against piecewise-linear forcing). Non-convergence within
// picard_max_iter returns the best iterate with converged = false.
std::pair<Trajectory, PicardDiagnostics> solve_mild_picard(
    const ModelParams& p, const State& x0, const SolverConfig& cfg);

// Classical fixed-step 4th-order reference; requires alpha = 1.
Trajectory solve_rk4_classical(const ModelParams& p, const State& x0,
                               const SolverConfig& cfg);

// Envelope value M^n t^{n alpha} Gamma(alpha)^n / Gamma(n alpha + 1),
// computed in log space so large n cannot overflow intermediates.
double picard_envelope(double M, FractionalOrder alpha, double t, int n);

}  // namespace pofrac
