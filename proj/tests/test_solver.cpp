#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pofrac/gamma.hpp"
#include "pofrac/mittag_leffler.hpp"
#include "pofrac/solver.hpp"
#include "pofrac/trajectory_io.hpp"

using namespace pofrac;

namespace {

// All nonlinear coefficients zero: the system decouples into scalar linear
// Caputo equations with closed-form solutions x0_c E_a(-rate_c t^a).
ModelParams linear_params(double m, double sigma, double mu) {
  ModelParams p;
  p.m = m;
  p.sigma = sigma;
  p.mu = mu;
  return p;
}

double sup_distance(const Trajectory& a, const Trajectory& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.states.size(); ++i) {
    double s = 0.0;
    for (int c = 0; c < 3; ++c)
      s += std::abs(a.states[i][static_cast<std::size_t>(c)] -
                    b.states[i][static_cast<std::size_t>(c)]);
    d = std::max(d, s);
  }
  return d;
}

}  // namespace

TEST_SUITE("solver_config") {
  TEST_CASE("validation") {
    SolverConfig cfg{FractionalOrder(0.5)};
    cfg.n_steps = 4;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.n_steps = 64;
    CHECK_NOTHROW(cfg.validate());
    cfg.method = SolverMethod::rk4_classical;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);  // needs alpha = 1
    CHECK_THROWS_AS((void)solver_method_from_string("euler"), std::invalid_argument);
  }
}

TEST_SUITE("solve_rk4") {
  TEST_CASE("linear decay to machine accuracy") {
    SolverConfig cfg{FractionalOrder(1.0)};
    cfg.horizon = 1.0;
    cfg.n_steps = 256;
    cfg.method = SolverMethod::rk4_classical;
    Trajectory t = solve_rk4_classical(linear_params(1, 1, 1), State(1, 1, 1), cfg);
    for (int c = 0; c < 3; ++c)
      CHECK(t.states.back()[static_cast<std::size_t>(c)] ==
            doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  }

  TEST_CASE("fourth-order step halving") {
    auto run = [](int n) {
      SolverConfig cfg{FractionalOrder(1.0)};
      cfg.horizon = 1.0;
      cfg.n_steps = n;
      cfg.method = SolverMethod::rk4_classical;
      Trajectory t = solve_rk4_classical(linear_params(1, 1, 1), State(1, 1, 1), cfg);
      return std::abs(t.states.back()[0] - std::exp(-1.0));
    };
    const double e1 = run(16), e2 = run(32);
    CHECK(e1 / e2 > 12.0);  // ~16x for a 4th-order scheme
    CHECK(e1 / e2 < 20.0);
  }

  TEST_CASE("first step leaves along the full right-hand side") {
    ModelParams ones = ModelParams::all_ones();
    SolverConfig cfg{FractionalOrder(1.0)};
    cfg.horizon = 1.0;
    cfg.n_steps = 1024;
    cfg.method = SolverMethod::rk4_classical;
    Trajectory t = solve_rk4_classical(ones, State(1, 1, 1), cfg);
    const double dt = 1.0 / 1024;
    const Vec3 want{-1.5, -2.0, -0.75};  // hand-computed rhs at (1,1,1)
    for (int c = 0; c < 3; ++c) {
      const double slope = (t.states[1][static_cast<std::size_t>(c)] - 1.0) / dt;
      CHECK(slope == doctest::Approx(want[static_cast<std::size_t>(c)]).epsilon(2e-3));
    }
  }
}

TEST_SUITE("solve_abm") {
  TEST_CASE("classical limit on the decoupled problem") {
    SolverConfig cfg{FractionalOrder(1.0)};
    cfg.horizon = 1.0;
    cfg.n_steps = 512;
    Trajectory t = solve_abm(linear_params(1, 1, 1), State(1, 1, 1), cfg);
    for (int c = 0; c < 3; ++c)
      CHECK(t.states.back()[static_cast<std::size_t>(c)] ==
            doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }

  TEST_CASE("fractional linear decay against the Mittag-Leffler solution") {
    SolverConfig cfg{FractionalOrder(0.5)};
    cfg.horizon = 1.0;
    cfg.n_steps = 1024;
    Trajectory t = solve_abm(linear_params(1, 0, 0), State(1, 0, 0), cfg);
    CHECK(t.states.back()[0] ==
          doctest::Approx(mittag_leffler(0.5, -1.0)).epsilon(1e-4));
    double sup = 0.0;
    for (std::size_t i = 0; i < t.times.size(); ++i) {
      const double exact = mittag_leffler(0.5, -std::pow(t.times[i], 0.5));
      sup = std::max(sup, std::abs(t.states[i][0] - exact));
    }
    CHECK(sup < 1e-4);
  }

  TEST_CASE("agrees with the classical reference on the full model") {
    ModelParams ones = ModelParams::all_ones();
    SolverConfig cfg{FractionalOrder(1.0)};
    cfg.horizon = 2.0;
    cfg.n_steps = 2048;
    Trajectory abm = solve_abm(ones, State(1, 1, 1), cfg);
    cfg.method = SolverMethod::rk4_classical;
    Trajectory rk = solve_rk4_classical(ones, State(1, 1, 1), cfg);
    CHECK(sup_distance(abm, rk) < 1e-4);
  }

  TEST_CASE("refinement tightens the self-reference error") {
    ModelParams ones = ModelParams::all_ones();
    auto run = [&](int n) {
      SolverConfig cfg{FractionalOrder(0.8)};
      cfg.horizon = 1.0;
      cfg.n_steps = n;
      return solve_abm(ones, State(1, 1, 1), cfg);
    };
    Trajectory ref = run(8192);
    auto err = [&](const Trajectory& t) {
      const std::size_t stride = (ref.states.size() - 1) / (t.states.size() - 1);
      double d = 0.0;
      for (std::size_t i = 0; i < t.states.size(); ++i)
        for (int c = 0; c < 3; ++c)
          d = std::max(d, std::abs(t.states[i][static_cast<std::size_t>(c)] -
                                   ref.states[i * stride][static_cast<std::size_t>(c)]));
      return d;
    };
    const double e512 = err(run(512));
    const double e1024 = err(run(1024));
    CHECK(e512 / e1024 >= 1.5);
  }
}

TEST_SUITE("solve_mild_picard") {
  TEST_CASE("zero forcing reproduces the homogeneous solution exactly") {
    for (double a : {0.4, 0.7, 1.0}) {
      SolverConfig cfg{FractionalOrder(a)};
      cfg.horizon = 1.0;
      cfg.n_steps = 128;
      cfg.method = SolverMethod::mild_picard;
      auto [t, diag] = solve_mild_picard(linear_params(1.0, 0.5, 0.0),
                                         State(1.0, 2.0, 0.75), cfg);
      CHECK(diag.converged);
      CHECK(diag.iterations_used <= 2);  // fixed point after one application
      for (std::size_t i = 0; i < t.times.size(); ++i) {
        const double ta = std::pow(t.times[i], a);
        CHECK(t.states[i][0] ==
              doctest::Approx(mittag_leffler(a, -ta)).epsilon(1e-12));
        CHECK(t.states[i][1] ==
              doctest::Approx(2.0 * mittag_leffler(a, -0.5 * ta)).epsilon(1e-12));
        CHECK(t.states[i][2] == doctest::Approx(0.75).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("origin is a fixed point") {
    ModelParams ones = ModelParams::all_ones();
    SolverConfig cfg{FractionalOrder(0.7)};
    cfg.horizon = 1.0;
    cfg.n_steps = 64;
    cfg.method = SolverMethod::mild_picard;
    auto [t, diag] = solve_mild_picard(ones, State(0, 0, 0), cfg);
    CHECK(diag.converged);
    CHECK(diag.iterations_used == 1);
    for (const auto& s : t.states)
      CHECK(one_norm(s) == 0.0);
  }

  TEST_CASE("cross-backend agreement on the full model") {
    ModelParams ones = ModelParams::all_ones();
    SolverConfig cfg{FractionalOrder(0.7)};
    cfg.horizon = 1.0;
    cfg.n_steps = 512;
    cfg.method = SolverMethod::mild_picard;
    auto [tp, diag] = solve_mild_picard(ones, State(1, 1, 1), cfg);
    CHECK(diag.converged);
    Trajectory ta = solve_abm(ones, State(1, 1, 1), cfg);
    CHECK(sup_distance(tp, ta) < 1e-3);
  }

  TEST_CASE("iterate differences decay and the envelope dominates") {
    ModelParams ones = ModelParams::all_ones();
    SolverConfig cfg{FractionalOrder(0.7)};
    cfg.horizon = 1.0;
    cfg.n_steps = 256;
    cfg.method = SolverMethod::mild_picard;
    cfg.envelope_lipschitz_L = 9.0;  // box (1,1,1) constant
    auto [t, diag] = solve_mild_picard(ones, State(1, 1, 1), cfg);
    CHECK(diag.converged);
    CHECK(diag.M ==
          doctest::Approx(0.7 * 9.0 * 3.0 / gamma_fn(1.7)).epsilon(1e-12));
    for (std::size_t n = 2; n + 1 < diag.sup_differences.size(); ++n) {
      CHECK(diag.sup_differences[n + 1] <= diag.sup_differences[n]);
      CHECK(diag.sup_differences[n] <= diag.envelope[n]);
    }
    // Contraction: the difference ratio is eventually below the envelope ratio.
    const std::size_t last = diag.sup_differences.size() - 2;
    CHECK(diag.sup_differences[last + 1] / diag.sup_differences[last] <=
          diag.envelope[last + 1] / diag.envelope[last]);
  }
}

TEST_SUITE("picard_envelope") {
  TEST_CASE("integer order reduces to factorials") {
    CHECK(picard_envelope(1.0, FractionalOrder(1.0), 1.0, 5) ==
          doctest::Approx(1.0 / 120.0).epsilon(1e-13));
  }

  TEST_CASE("zero constant") {
    CHECK(picard_envelope(0.0, FractionalOrder(0.5), 1.0, 3) == 0.0);
  }

  TEST_CASE("half order against tabulated Gamma values") {
    // M=2, t=1, n=3: 8 Gamma(1/2)^3 / Gamma(2.5) = 32 pi / 3.
    const double got = picard_envelope(2.0, FractionalOrder(0.5), 1.0, 3);
    CHECK(got == doctest::Approx(32.0 * M_PI / 3.0).epsilon(1e-12));
    const double tab = 8.0 * std::pow(1.7724538509055160273, 3) / 1.3293403881791370205;
    CHECK(got == doctest::Approx(tab).epsilon(1e-12));
  }

  TEST_CASE("large n computes in log space without overflow") {
    const double v = picard_envelope(30.0, FractionalOrder(0.6), 1.0, 400);
    CHECK(std::isfinite(v));
    CHECK(v >= 0.0);
  }
}

TEST_SUITE("trajectory_io") {
  TEST_CASE("csv shape and first row") {
    SolverConfig cfg{FractionalOrder(1.0)};
    cfg.horizon = 1.0;
    cfg.n_steps = 8;
    Trajectory t = solve_abm(linear_params(1, 1, 1), State(1, 1, 1), cfg);
    const std::string csv = trajectory_to_csv(t);
    CHECK(csv.substr(0, 10) == "t,x1,x2,x3");
    CHECK(csv.find("\n0,1,1,1\n") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);
    int rows = 0;
    for (char c : csv)
      if (c == '\n') ++rows;
    CHECK(rows == 10);  // header + 9 grid points
  }
}
