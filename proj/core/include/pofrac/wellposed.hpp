#pragma once

#include <string>
#include <vector>

#include "pofrac/analysis.hpp"
#include "pofrac/solver.hpp"

namespace pofrac {

enum class CertStatus { pass, fail, voided };
const char* to_string(CertStatus s);

// Uniqueness certificate: both fractional backends run from the same data
// must agree up to discretization error.
struct UniquenessReport {
  double distance = 0.0;  // sup over the grid of the 1-norm gap
  double tol = 0.0;
  bool pass = false;
  int n_steps_picard = 0;
  int n_steps_abm = 0;
  double alpha = 0.0;
  bool picard_converged = false;
};

// Runs mild_picard and abm from identical (p, x0); when n_steps_abm is 0 the
// same grid is used, otherwise it must be a multiple of cfg.n_steps and the
// distance is taken on the common (coarser) grid.
UniquenessReport check_uniqueness(const ModelParams& p, const State& x0,
                                  const SolverConfig& cfg, double tol,
                                  int n_steps_abm = 0);

struct EnvelopeEntry {
  int n = 0;
  double difference = 0.0;  // d_n
  double envelope = 0.0;    // e_n
  double margin = 0.0;      // e_n - d_n
};

struct EnvelopeReport {
  std::vector<EnvelopeEntry> entries;  // n >= 1
  double M = 0.0;
  double K_used = 0.0;
  bool converged = false;
  bool pass = false;  // margins from n = 2 on are >= -1e-9 * e_n
};

// Checks the recorded iterate differences against the decay envelope.
// Requires diagnostics produced with a Lipschitz constant (M recorded).
EnvelopeReport check_picard_envelope(const PicardDiagnostics& diag);

struct BoxViolation {
  int index = -1;
  int component = -1;
  double value = 0.0;
  std::string kind;  // "nan", "below_zero", "above_box"
};

struct BoxCheckReport {
  bool pass = true;
  BoxViolation first_violation;
  int flagged_tiny_negatives = 0;  // components in [-1e-12, 0), accepted
};

// Verifies 0 <= x_i(t_k) <= M_i on the whole grid (slack 1e-12 below zero);
// the hypothesis under which the Lipschitz constants were computed.
BoxCheckReport check_positivity_and_box(const Trajectory& traj,
                                        const StateBox& box);

struct DependenceEntry {
  double eps = 0.0;
  double deviation = 0.0;  // sup_t ||x_eps - x||_1
  double bound = 0.0;      // eps * K* * E_alpha(M Gamma(alpha) T^alpha)
  CertStatus status = CertStatus::fail;
};

struct DependenceReport {
  std::vector<DependenceEntry> entries;
  double K_star = 1.0;
  double M = 0.0;
  double L = 0.0;
  double alpha = 0.0;
  StateBox box;
  // Least-squares fit deviation ~ slope * eps + intercept over passing runs.
  double fit_slope = 0.0;
  double fit_intercept = 0.0;
  bool all_pass = false;
};

// Perturbs the initial condition along (1,1,1)/3 scaled to 1-norm eps,
// integrates both trajectories with the same backend and grid, and compares
// the sup deviation against the continuous-dependence bound with K* = 1 and
// M = alpha K L ||x0||_1 built from the Lipschitz constant over `box`.
// Trajectories leaving the box void (rather than fail) that certificate.
DependenceReport check_continuous_dependence(const ModelParams& p,
                                             const State& x0,
                                             const std::vector<double>& epsilons,
                                             const SolverConfig& cfg,
                                             const StateBox& box);

}  // namespace pofrac
