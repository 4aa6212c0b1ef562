#include <doctest.h>

#include <cmath>
#include <vector>

#include "pofrac/errors.hpp"
#include "pofrac/gamma.hpp"
#include "pofrac/gronwall.hpp"
#include "pofrac/mittag_leffler.hpp"

#include "oracles.hpp"

using namespace pofrac;

TEST_SUITE("gronwall_constant_q") {
  TEST_CASE("zero multiplier returns the forcing") {
    GronwallProblem prob{2.5, 0.0, 0.7, 1.0};
    CHECK(gronwall_bound_constant_q(prob, 0.6, 10) == 2.5);
  }

  TEST_CASE("order one telescopes to the classical exponential") {
    for (double b : {0.5, 1.0, 3.0}) {
      GronwallProblem prob{2.0, b, 1.0, 2.0};
      for (double t : {0.3, 1.0, 2.0}) {
        const double want = 2.0 * std::exp(b * t);
        CHECK(gronwall_bound_constant_q(prob, t, 80) ==
              doctest::Approx(want).epsilon(1e-8));
      }
    }
  }

  TEST_CASE("series matches the Mittag-Leffler closed form") {
    for (double beta : {0.5, 0.8}) {
      for (double b : {0.5, 2.0}) {
        GronwallProblem prob{1.0, b, beta, 1.0};
        GronwallSeriesInfo info;
        const double series =
            gronwall_bound_constant_q(prob, 1.0, 150, 1e-10, &info);
        const double ml = gronwall_bound_ml(1.0, b, beta, 1.0);
        CHECK(std::abs(series - ml) <= info.remainder + 1e-10 * ml);
      }
    }
  }

  TEST_CASE("sampled forcing reduces to the constant closed form") {
    auto h = SampledFunction::from_callable([](double) { return 1.5; }, 1.0, 64);
    GronwallProblem sampled{h, 1.0, 0.6, 1.0};
    GronwallProblem constant{1.5, 1.0, 0.6, 1.0};
    CHECK(gronwall_bound_constant_q(sampled, 1.0, 60) ==
          doctest::Approx(gronwall_bound_constant_q(constant, 1.0, 60))
              .epsilon(1e-12));
  }

  TEST_CASE("insufficient terms raise a numerical failure") {
    GronwallProblem prob{1.0, 5.0, 0.4, 1.0};
    CHECK_THROWS_AS((void)gronwall_bound_constant_q(prob, 1.0, 2, 1e-10),
                    numerical_failure);
  }

  TEST_CASE("bound dominates the forcing") {
    // Orders are kept away from zero; tiny beta with a live multiplier sends
    // the bound beyond double range, which is a (tested) failure path.
    std::uint64_t st = 7;
    for (int i = 0; i < 100; ++i) {
      const double h0 = 3.0 * oracles::unit_draw(st);
      const double b = 2.0 * oracles::unit_draw(st);
      const double beta = 0.45 + 0.65 * oracles::unit_draw(st);
      const double t = oracles::unit_draw(st);
      GronwallProblem prob{h0, b, beta, 1.0};
      CHECK(gronwall_bound_constant_q(prob, t, 150) >= h0 - 1e-14);
    }
  }
}

TEST_SUITE("gronwall_ml") {
  TEST_CASE("trivial cases") {
    CHECK(gronwall_bound_ml(2.0, 0.0, 0.7, 1.5) == 2.0);
    CHECK(gronwall_bound_ml(0.0, 3.0, 0.7, 1.5) == 0.0);
    CHECK(gronwall_bound_ml(2.0, 3.0, 1.0, 1.0) ==
          doctest::Approx(2.0 * std::exp(3.0)).epsilon(1e-13));
    CHECK(gronwall_bound_ml(2.0, 3.0, 1.0, 1.0) ==
          doctest::Approx(40.171073846375336).epsilon(1e-13));
  }
}

TEST_SUITE("gronwall_general") {
  TEST_CASE("constant multiplier reduces exactly") {
    GronwallProblem prob{1.0, 0.8, 0.5, 1.0};
    for (double t : {0.2, 0.7, 1.0})
      CHECK(gronwall_bound_general(prob, t, 60) ==
            gronwall_bound_constant_q(prob, t, 60));
  }

  TEST_CASE("zero forcing gives zero") {
    auto q = SampledFunction::from_callable([](double t) { return t; }, 1.0, 32);
    GronwallProblem prob{0.0, q, 0.5, 1.0};
    CHECK(gronwall_bound_general(prob, 1.0, 60) == 0.0);
  }

  TEST_CASE("non-monotone multiplier is rejected") {
    auto q = SampledFunction::from_callable(
        [](double t) { return 1.0 - 0.5 * t; }, 1.0, 16);
    GronwallProblem prob{1.0, q, 0.5, 1.0};
    CHECK_THROWS_AS((void)gronwall_bound_general(prob, 1.0, 60),
                    std::invalid_argument);
  }

  TEST_CASE("matches the frozen-multiplier fixed point") {
    // q(t) = t on [0,1]; the display freezes q at the evaluation time, so the
    // oracle is the fixed point of the constant-b equation with b = q(t_hat),
    // iterated on a 2000-cell grid.
    auto q = SampledFunction::from_callable([](double t) { return t; }, 1.0, 64);
    GronwallProblem prob{1.0, q, 0.5, 1.0};
    const double got = gronwall_bound_general(prob, 1.0, 80);
    const double want = oracles::gronwall_fixed_point(1.0, 1.0, 0.5, 1.0, 2000);
    CHECK(got == doctest::Approx(want).epsilon(1e-4));
  }

  TEST_CASE("dominates the variable-multiplier solution") {
    // With q evaluated at the running time the solution is smaller; the
    // frozen bound must sit above it at every grid time.
    const int n = 400;
    std::vector<double> qv(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) qv[static_cast<std::size_t>(i)] = 1.0 * i / n;
    const std::vector<double> sol =
        oracles::gronwall_fixed_point_variable_q(1.0, qv, 0.5, 1.0, n);
    auto q = SampledFunction::from_callable([](double t) { return t; }, 1.0, 64);
    GronwallProblem prob{1.0, q, 0.5, 1.0};
    for (int i = 40; i <= n; i += 40) {
      const double t = 1.0 * i / n;
      CHECK(gronwall_bound_general(prob, t, 80) >=
            sol[static_cast<std::size_t>(i)] * (1.0 - 1e-6));
    }
  }
}
