#include "pofrac/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/mittag_leffler.hpp"
#include "pofrac/model_io.hpp"
#include "pofrac/quadrature.hpp"
#include "pofrac/version.hpp"

namespace pofrac {

namespace {

constexpr double kNegativeSlack = -1e-12;

std::vector<double> uniform_grid(double horizon, int n_steps) {
  std::vector<double> t(static_cast<std::size_t>(n_steps) + 1);
  for (int i = 0; i <= n_steps; ++i)
    t[static_cast<std::size_t>(i)] = horizon * static_cast<double>(i) / n_steps;
  t.back() = horizon;
  return t;
}

void check_step(const Vec3& x, int step, const char* method) {
  for (double c : x) {
    if (std::isnan(c) || std::isinf(c))
      throw numerical_failure(std::string(method) +
                                  ": non-finite state; last good step index " +
                                  std::to_string(step - 1),
                              0.0, std::numeric_limits<double>::infinity());
    if (c < kNegativeSlack)
      throw invariant_violation(std::string(method) + ": component below -1e-12 at step " +
                                std::to_string(step));
  }
}

Trajectory make_trajectory(const ModelParams& p, const SolverConfig& cfg,
                           std::vector<double> times, std::vector<Vec3> states) {
  Trajectory out;
  out.times = std::move(times);
  out.states = std::move(states);
  out.method = to_string(cfg.method);
  out.alpha = cfg.order.value();
  out.params_fingerprint = fingerprint_hex(params_to_json(p));
  return out;
}

}  // namespace

const char* to_string(SolverMethod m) {
  switch (m) {
    case SolverMethod::mild_picard: return "mild_picard";
    case SolverMethod::abm: return "abm";
    case SolverMethod::rk4_classical: return "rk4_classical";
  }
  return "unknown";
}

SolverMethod solver_method_from_string(const std::string& name) {
  if (name == "mild_picard") return SolverMethod::mild_picard;
  if (name == "abm") return SolverMethod::abm;
  if (name == "rk4_classical") return SolverMethod::rk4_classical;
  throw std::invalid_argument("unknown solver method '" + name + "'");
}

void SolverConfig::validate() const {
  if (!(horizon > 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("SolverConfig: horizon must be finite positive");
  if (n_steps < 8)
    throw std::invalid_argument("SolverConfig: n_steps must be at least 8");
  if (picard_max_iter < 1)
    throw std::invalid_argument("SolverConfig: picard_max_iter must be positive");
  if (!(picard_tol > 0.0))
    throw std::invalid_argument("SolverConfig: picard_tol must be positive");
  if (method == SolverMethod::rk4_classical && order.value() != 1.0)
    throw std::invalid_argument("SolverConfig: rk4_classical requires alpha = 1");
  if (envelope_constant_K && !(*envelope_constant_K > 0.0))
    throw std::invalid_argument("SolverConfig: envelope_constant_K must be positive");
  if (envelope_lipschitz_L && !(*envelope_lipschitz_L >= 0.0))
    throw std::invalid_argument("SolverConfig: envelope_lipschitz_L must be nonnegative");
}

double SolverConfig::resolved_envelope_K() const {
  if (envelope_constant_K) return *envelope_constant_K;
  return 1.0 / gamma_fn(1.0 + order.value());
}

Trajectory solve_abm(const ModelParams& p, const State& x0,
                     const SolverConfig& cfg) {
  cfg.validate();
  p.validate();
  const double alpha = cfg.order.value();
  const int n = cfg.n_steps;
  const double dt = cfg.horizon / n;
  const double dta = std::pow(dt, alpha);
  const double pred_scale = dta / gamma_fn(alpha + 1.0);
  const double corr_scale = dta / gamma_fn(alpha + 2.0);

  // k^alpha and k^(alpha+1) tables.
  std::vector<double> pa(static_cast<std::size_t>(n) + 2),
      pa1(static_cast<std::size_t>(n) + 2);
  for (int k = 0; k <= n + 1; ++k) {
    pa[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k), alpha);
    pa1[static_cast<std::size_t>(k)] =
        std::pow(static_cast<double>(k), alpha + 1.0);
  }

  // Starting correction: the solution behaves like t^alpha at the origin, so
  // the first cell interpolates the forcing in the basis {1, s^alpha} instead
  // of {1, s}. cw[step] weights (f_1 - f_0):
  //   cw = (1/Gamma(a)) int_0^dt (t_{step+1}-s)^{a-1} [(s/dt)^a - s/dt] ds,
  // with the step = 0 case in closed Beta form.
  std::vector<double> cw(static_cast<std::size_t>(n));
  if (n > 0 && alpha < 1.0) {
    cw[0] = dta * (gamma_fn(alpha + 1.0) / gamma_fn(2.0 * alpha + 1.0) -
                   1.0 / gamma_fn(alpha + 2.0));
    const double inv_ga = 1.0 / gamma_fn(alpha);
    for (int step = 1; step < n; ++step) {
      const double tn1 = (step + 1) * dt;
      auto integrand = [&](double s) {
        const double u = s / dt;
        return std::pow(tn1 - s, alpha - 1.0) * (std::pow(u, alpha) - u);
      };
      cw[static_cast<std::size_t>(step)] =
          inv_ga *
          integrate_adaptive(integrand, 0.0, dt, 1e-18, 1e-10).value;
    }
  }

  std::vector<Vec3> x(static_cast<std::size_t>(n) + 1);
  std::vector<Vec3> f(static_cast<std::size_t>(n) + 1);
  x[0] = x0.vec();
  f[0] = rhs_full(p, x[0]);

  for (int step = 0; step < n; ++step) {
    // Predictor: product-rectangle weights (k+1)^a - k^a.
    Vec3 pred{};
    for (int j = 0; j <= step; ++j) {
      const int k = step - j;
      const double w = pa[static_cast<std::size_t>(k) + 1] -
                       pa[static_cast<std::size_t>(k)];
      for (int c = 0; c < 3; ++c) pred[c] += w * f[static_cast<std::size_t>(j)][c];
    }
    Vec3 xp;
    for (int c = 0; c < 3; ++c) xp[c] = x[0][c] + pred_scale * pred[c];

    // Corrector: product-trapezoid weights plus the starting correction.
    const double a0 = pa1[static_cast<std::size_t>(step)] -
                      (step - alpha) * pa[static_cast<std::size_t>(step) + 1];
    Vec3 corr{};
    for (int c = 0; c < 3; ++c) corr[c] = a0 * f[0][c];
    for (int j = 1; j <= step; ++j) {
      const int k = step + 1 - j;
      const double w = pa1[static_cast<std::size_t>(k) + 1] -
                       2.0 * pa1[static_cast<std::size_t>(k)] +
                       pa1[static_cast<std::size_t>(k) - 1];
      for (int c = 0; c < 3; ++c) corr[c] += w * f[static_cast<std::size_t>(j)][c];
    }
    Vec3 xn;
    if (step == 0) {
      // f_1 enters its own correction weight; a few fixed-point sweeps of
      // the corrector settle it (the weight is O(dt^alpha), contractive).
      Vec3 f1 = rhs_full(p, xp);
      for (int sweep = 0; sweep < 3; ++sweep) {
        for (int c = 0; c < 3; ++c)
          xn[c] = x[0][c] + corr_scale * (corr[c] + f1[c]) +
                  (alpha < 1.0 ? cw[0] * (f1[c] - f[0][c]) : 0.0);
        f1 = rhs_full(p, xn);
      }
    } else {
      const Vec3 fp = rhs_full(p, xp);
      for (int c = 0; c < 3; ++c)
        xn[c] = x[0][c] + corr_scale * (corr[c] + fp[c]) +
                (alpha < 1.0
                     ? cw[static_cast<std::size_t>(step)] * (f[1][c] - f[0][c])
                     : 0.0);
    }
    check_step(xn, step + 1, "solve_abm");
    x[static_cast<std::size_t>(step) + 1] = xn;
    f[static_cast<std::size_t>(step) + 1] = rhs_full(p, xn);
  }

  return make_trajectory(p, cfg, uniform_grid(cfg.horizon, n), std::move(x));
}

std::pair<Trajectory, PicardDiagnostics> solve_mild_picard(
    const ModelParams& p, const State& x0, const SolverConfig& cfg) {
  cfg.validate();
  p.validate();
  const double alpha = cfg.order.value();
  const int n = cfg.n_steps;
  const double dt = cfg.horizon / n;
  const std::vector<double> times = uniform_grid(cfg.horizon, n);
  const double rate[3] = {p.m, p.sigma, p.mu};

  // Homogeneous part x0_c E_a(-r_c t^a) and the integrated kernel moments
  //   G1(tau) = int_0^tau k = (1 - E_a(-r tau^a)) / r,
  //   G2(tau) = int_0^tau s k(s) ds
  //           = (tau/r) (E_{a,2}(-r tau^a) - E_a(-r tau^a)),
  // with the r -> 0 limits tau^a/Gamma(a+1) and a tau^(a+1)/Gamma(a+2).
  std::vector<std::array<double, 3>> hom(times.size());
  std::vector<std::array<double, 3>> dG1(times.size());  // dG1[k] over ((k-1)dt, k dt]
  std::vector<std::array<double, 3>> w2(times.size());
  {
    std::vector<std::array<double, 3>> g1(times.size()), g2(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double t = times[i];
      const double ta = std::pow(t, alpha);
      for (int c = 0; c < 3; ++c) {
        const double r = rate[c];
        if (r > 0.0) {
          const double e1 = mittag_leffler(alpha, -r * ta);
          const double e2 = mittag_leffler2(alpha, 2.0, -r * ta);
          hom[i][c] = x0.vec()[static_cast<std::size_t>(c)] * e1;
          g1[i][c] = (1.0 - e1) / r;
          g2[i][c] = t * (e2 - e1) / r;
        } else {
          hom[i][c] = x0.vec()[static_cast<std::size_t>(c)];
          g1[i][c] = ta / gamma_fn(alpha + 1.0);
          g2[i][c] = alpha * ta * t / gamma_fn(alpha + 2.0);
        }
      }
    }
    for (std::size_t k = 1; k < times.size(); ++k) {
      for (int c = 0; c < 3; ++c) {
        dG1[k][c] = g1[k][c] - g1[k - 1][c];
        w2[k][c] = (g2[k][c] - g2[k - 1][c]) - times[k - 1] * dG1[k][c];
      }
    }
  }

  PicardDiagnostics diag;
  diag.K_used = cfg.resolved_envelope_K();
  diag.lipschitz_L = cfg.envelope_lipschitz_L.value_or(
      std::numeric_limits<double>::quiet_NaN());
  diag.M = cfg.envelope_lipschitz_L
               ? alpha * diag.K_used * (*cfg.envelope_lipschitz_L) *
                     one_norm(x0.vec())
               : std::numeric_limits<double>::quiet_NaN();

  std::vector<Vec3> cur(times.size(), x0.vec());
  std::vector<Vec3> next(times.size());
  std::vector<Vec3> forcing(times.size());

  for (int iter = 1; iter <= cfg.picard_max_iter; ++iter) {
    for (std::size_t i = 0; i < times.size(); ++i)
      forcing[i] = rhs_nonlinear(p, cur[i]);

    next[0] = x0.vec();
    for (std::size_t i = 1; i < times.size(); ++i) {
      Vec3 acc{};
      for (std::size_t j = 0; j < i; ++j) {
        const std::size_t mk = i - j;
        for (int c = 0; c < 3; ++c) {
          const double fl = forcing[j][c];      // value at tau = mk dt
          const double fr = forcing[j + 1][c];  // value at tau = (mk-1) dt
          acc[c] += fr * dG1[mk][c] + ((fl - fr) / dt) * w2[mk][c];
        }
      }
      for (int c = 0; c < 3; ++c) {
        next[i][c] = hom[i][c] + acc[c];
        if (std::isnan(next[i][c]))
          throw numerical_failure(
              "solve_mild_picard: NaN in iterate " + std::to_string(iter), 0.0,
              std::numeric_limits<double>::infinity());
      }
    }

    double d = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const Vec3 diff{next[i][0] - cur[i][0], next[i][1] - cur[i][1],
                      next[i][2] - cur[i][2]};
      d = std::max(d, one_norm(diff));
    }
    diag.sup_differences.push_back(d);
    cur.swap(next);
    diag.iterations_used = iter;
    if (d <= cfg.picard_tol) {
      diag.converged = true;
      break;
    }
  }

  diag.envelope.assign(diag.sup_differences.size(),
                       std::numeric_limits<double>::quiet_NaN());
  if (cfg.envelope_lipschitz_L) {
    for (std::size_t i = 1; i < diag.envelope.size(); ++i)
      diag.envelope[i] = picard_envelope(diag.M, cfg.order, cfg.horizon,
                                         static_cast<int>(i));
  }

  for (std::size_t i = 0; i < cur.size(); ++i)
    check_step(cur[i], static_cast<int>(i), "solve_mild_picard");

  return {make_trajectory(p, cfg, times, std::move(cur)), diag};
}

Trajectory solve_rk4_classical(const ModelParams& p, const State& x0,
                               const SolverConfig& cfg) {
  cfg.validate();
  p.validate();
  if (cfg.order.value() != 1.0)
    throw std::invalid_argument("solve_rk4_classical: requires alpha = 1");
  const int n = cfg.n_steps;
  const double dt = cfg.horizon / n;

  std::vector<Vec3> x(static_cast<std::size_t>(n) + 1);
  x[0] = x0.vec();
  for (int step = 0; step < n; ++step) {
    const Vec3& y = x[static_cast<std::size_t>(step)];
    const Vec3 k1 = rhs_full(p, y);
    Vec3 tmp;
    for (int c = 0; c < 3; ++c) tmp[c] = y[c] + 0.5 * dt * k1[c];
    const Vec3 k2 = rhs_full(p, tmp);
    for (int c = 0; c < 3; ++c) tmp[c] = y[c] + 0.5 * dt * k2[c];
    const Vec3 k3 = rhs_full(p, tmp);
    for (int c = 0; c < 3; ++c) tmp[c] = y[c] + dt * k3[c];
    const Vec3 k4 = rhs_full(p, tmp);
    Vec3 xn;
    for (int c = 0; c < 3; ++c)
      xn[c] = y[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    check_step(xn, step + 1, "solve_rk4_classical");
    x[static_cast<std::size_t>(step) + 1] = xn;
  }
  return make_trajectory(p, cfg, uniform_grid(cfg.horizon, n), std::move(x));
}

double picard_envelope(double M, FractionalOrder alpha, double t, int n) {
  if (n < 1) throw std::invalid_argument("picard_envelope: n must be positive");
  if (M < 0.0 || t < 0.0)
    throw std::invalid_argument("picard_envelope: M and t must be nonnegative");
  if (M == 0.0 || t == 0.0) return 0.0;
  const double a = alpha.value();
  const double ln = n * (std::log(M) + a * std::log(t) + log_gamma(a)) -
                    log_gamma(n * a + 1.0);
  return std::exp(ln);
}

}  // namespace pofrac
