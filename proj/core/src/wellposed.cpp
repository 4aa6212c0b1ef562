#include "pofrac/wellposed.hpp"

#include <cmath>
#include <stdexcept>

#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/mittag_leffler.hpp"

namespace pofrac {

namespace {

double sup_distance_subsampled(const Trajectory& coarse, const Trajectory& fine,
                               int stride) {
  double d = 0.0;
  for (std::size_t i = 0; i < coarse.states.size(); ++i) {
    const Vec3& a = coarse.states[i];
    const Vec3& b = fine.states[i * static_cast<std::size_t>(stride)];
    d = std::max(d, std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) +
                        std::abs(a[2] - b[2]));
  }
  return d;
}

}  // namespace

const char* to_string(CertStatus s) {
  switch (s) {
    case CertStatus::pass: return "pass";
    case CertStatus::fail: return "fail";
    case CertStatus::voided: return "void";
  }
  return "unknown";
}

UniquenessReport check_uniqueness(const ModelParams& p, const State& x0,
                                  const SolverConfig& cfg, double tol,
                                  int n_steps_abm) {
  if (!(tol > 0.0))
    throw std::invalid_argument("check_uniqueness: tol must be positive");
  SolverConfig cp = cfg;
  cp.method = SolverMethod::mild_picard;
  SolverConfig ca = cfg;
  ca.method = SolverMethod::abm;
  int stride = 1;
  if (n_steps_abm > 0) {
    if (n_steps_abm % cfg.n_steps != 0)
      throw std::invalid_argument(
          "check_uniqueness: n_steps_abm must be a multiple of cfg.n_steps");
    ca.n_steps = n_steps_abm;
    stride = n_steps_abm / cfg.n_steps;
  }

  auto [picard_traj, diag] = solve_mild_picard(p, x0, cp);
  Trajectory abm_traj = solve_abm(p, x0, ca);

  UniquenessReport r;
  r.distance = sup_distance_subsampled(picard_traj, abm_traj, stride);
  r.tol = tol;
  r.pass = r.distance <= tol;
  r.n_steps_picard = cp.n_steps;
  r.n_steps_abm = ca.n_steps;
  r.alpha = cfg.order.value();
  r.picard_converged = diag.converged;
  return r;
}

EnvelopeReport check_picard_envelope(const PicardDiagnostics& diag) {
  if (std::isnan(diag.M))
    throw std::invalid_argument(
        "check_picard_envelope: diagnostics carry no envelope constant "
        "(solver was run without a Lipschitz constant)");
  EnvelopeReport r;
  r.M = diag.M;
  r.K_used = diag.K_used;
  r.converged = diag.converged;
  r.pass = true;
  for (std::size_t n = 1; n < diag.sup_differences.size(); ++n) {
    EnvelopeEntry e;
    e.n = static_cast<int>(n);
    e.difference = diag.sup_differences[n];
    e.envelope = diag.envelope[n];
    e.margin = e.envelope - e.difference;
    r.entries.push_back(e);
    if (n >= 2 && e.margin < -1e-9 * e.envelope) r.pass = false;
  }
  return r;
}

BoxCheckReport check_positivity_and_box(const Trajectory& traj,
                                        const StateBox& box) {
  box.validate();
  const double bounds[3] = {box.M1, box.M2, box.M3};
  BoxCheckReport r;
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    for (int c = 0; c < 3; ++c) {
      const double v = traj.states[i][static_cast<std::size_t>(c)];
      std::string kind;
      if (std::isnan(v)) {
        kind = "nan";
      } else if (v < -1e-12) {
        kind = "below_zero";
      } else if (v > bounds[c]) {
        kind = "above_box";
      } else {
        if (v < 0.0) ++r.flagged_tiny_negatives;
        continue;
      }
      r.pass = false;
      r.first_violation = {static_cast<int>(i), c + 1, v, kind};
      return r;
    }
  }
  return r;
}

DependenceReport check_continuous_dependence(const ModelParams& p,
                                             const State& x0,
                                             const std::vector<double>& epsilons,
                                             const SolverConfig& cfg,
                                             const StateBox& box) {
  for (std::size_t j = 0; j + 1 < epsilons.size(); ++j)
    if (!(epsilons[j] < epsilons[j + 1]))
      throw std::invalid_argument(
          "check_continuous_dependence: epsilons must be strictly increasing");
  for (double e : epsilons)
    if (!(e >= 0.0))
      throw std::invalid_argument(
          "check_continuous_dependence: epsilons must be nonnegative");

  DependenceReport r;
  r.alpha = cfg.order.value();
  r.box = box;
  r.K_star = 1.0;  // int zeta_a(theta) ||e^{t^a theta A}|| dtheta <= 1 for
                   // nonpositive diagonal A
  LipschitzReport lip = lipschitz_constants(p, box);
  r.L = lip.L;
  const double K = cfg.resolved_envelope_K();
  r.M = cfg.order.value() * K * lip.L * one_norm(x0.vec());

  SolverConfig run_cfg = cfg;
  if (run_cfg.method == SolverMethod::rk4_classical)
    throw std::invalid_argument(
        "check_continuous_dependence: use a fractional backend");

  auto solve_one = [&](const State& ic) -> Trajectory {
    if (run_cfg.method == SolverMethod::mild_picard)
      return solve_mild_picard(p, ic, run_cfg).first;
    return solve_abm(p, ic, run_cfg);
  };

  const Trajectory base = solve_one(x0);
  const bool base_in_box = check_positivity_and_box(base, box).pass;
  const double bound_scale =
      mittag_leffler(cfg.order.value(),
                     r.M * gamma_fn(cfg.order.value()) *
                         std::pow(cfg.horizon, cfg.order.value()));

  double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
  int fitted = 0;
  r.all_pass = true;
  for (double eps : epsilons) {
    DependenceEntry entry;
    entry.eps = eps;
    entry.bound = eps * r.K_star * bound_scale;
    const Vec3 pv{x0.x1() + eps / 3.0, x0.x2() + eps / 3.0,
                  x0.x3() + eps / 3.0};
    Trajectory pert;
    try {
      pert = solve_one(State(pv));
    } catch (const std::invalid_argument&) {
      entry.status = CertStatus::voided;
      r.entries.push_back(entry);
      continue;
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < base.states.size(); ++i) {
      const Vec3& a = base.states[i];
      const Vec3& b = pert.states[i];
      dev = std::max(dev, std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) +
                              std::abs(a[2] - b[2]));
    }
    entry.deviation = dev;
    const bool in_box = base_in_box && check_positivity_and_box(pert, box).pass;
    if (!in_box) {
      entry.status = CertStatus::voided;  // L no longer applies
    } else {
      entry.status = dev <= entry.bound ? CertStatus::pass : CertStatus::fail;
      if (entry.status == CertStatus::fail) r.all_pass = false;
      sxx += eps * eps;
      sxy += eps * dev;
      sx += eps;
      sy += dev;
      ++fitted;
    }
    r.entries.push_back(entry);
  }
  if (fitted >= 2) {
    const double denom = fitted * sxx - sx * sx;
    r.fit_slope = (fitted * sxy - sx * sy) / denom;
    r.fit_intercept = (sy * sxx - sx * sxy) / denom;
  }
  return r;
}

}  // namespace pofrac
