#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pofrac/fractional_calculus.hpp"
#include "pofrac/gamma.hpp"

using namespace pofrac;

TEST_SUITE("sampled_function") {
  TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(SampledFunction({0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction({0.0, 1.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction({0.5, 1.0}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(SampledFunction({0.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                    std::invalid_argument);
    SampledFunction ok({0.0, 0.5, 2.0}, {1.0, 0.0, 4.0});
    CHECK(ok.value_at(0.25) == doctest::Approx(0.5));
    CHECK(ok.value_at(2.0) == doctest::Approx(4.0));
    CHECK(ok.slope_at(1.0) == doctest::Approx(8.0 / 3.0));
  }
}

TEST_SUITE("fractional_integral") {
  TEST_CASE("classical integral of a constant") {
    auto phi = SampledFunction::from_callable([](double) { return 3.0; }, 2.0, 64);
    for (double t : {0.5, 1.0, 2.0})
      CHECK(fractional_integral(1.0, phi, t) == doctest::Approx(3.0 * t).epsilon(1e-14));
  }

  TEST_CASE("half integral of one") {
    auto phi = SampledFunction::from_callable([](double) { return 1.0; }, 1.0, 32);
    for (double t : {0.25, 0.7, 1.0}) {
      const double want = std::pow(t, 0.5) / gamma_fn(1.5);
      CHECK(fractional_integral(0.5, phi, t) == doctest::Approx(want).epsilon(1e-13));
    }
  }

  TEST_CASE("monomial rule on a dense grid") {
    // I^beta t^p = Gamma(p+1)/Gamma(p+beta+1) t^{p+beta}; p = 1, beta = 1/2.
    auto phi = SampledFunction::from_callable([](double t) { return t; }, 1.0, 1000);
    const double want = gamma_fn(2.0) / gamma_fn(2.5);
    CHECK(fractional_integral(0.5, phi, 1.0) == doctest::Approx(want).epsilon(1e-4));
    // Product integration is exact for piecewise-linear data, so in fact:
    CHECK(fractional_integral(0.5, phi, 1.0) == doctest::Approx(want).epsilon(1e-12));
  }

  TEST_CASE("beta = 1 agrees with the trapezoid rule") {
    auto phi = SampledFunction::from_callable(
        [](double t) { return std::sin(3.0 * t) + 2.0; }, 1.0, 200);
    const auto& g = phi.grid();
    const auto& v = phi.values();
    double trap = 0.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      trap += 0.5 * (v[i] + v[i + 1]) * (g[i + 1] - g[i]);
    CHECK(fractional_integral(1.0, phi, 1.0) == doctest::Approx(trap).epsilon(1e-12));
  }

  TEST_CASE("domain errors") {
    auto phi = SampledFunction::from_callable([](double) { return 1.0; }, 1.0, 8);
    CHECK_THROWS_AS((void)fractional_integral(0.5, phi, 1.5), std::domain_error);
    CHECK_THROWS_AS((void)fractional_integral(0.0, phi, 0.5), std::invalid_argument);
  }
}

TEST_SUITE("caputo_derivative") {
  TEST_CASE("annihilates constants") {
    auto phi = SampledFunction::from_callable([](double) { return 5.0; }, 1.0, 50);
    for (double beta : {0.2, 0.5, 0.9, 1.0})
      for (double t : {0.1, 0.6, 1.0})
        CHECK(caputo_derivative(beta, phi, t) == doctest::Approx(0.0));
  }

  TEST_CASE("identity function at half order") {
    auto phi = SampledFunction::from_callable([](double t) { return t; }, 1.0, 100);
    const double want = 1.0 / gamma_fn(1.5);  // t^{1-beta}/Gamma(2-beta) at t=1
    CHECK(caputo_derivative(0.5, phi, 1.0) == doctest::Approx(want).epsilon(1e-3));
  }

  TEST_CASE("order one recovers the classical slope") {
    auto phi = SampledFunction::from_callable([](double t) { return t * t; }, 1.0, 4000);
    // centered finite difference of phi at t as the classical oracle
    const double fd = ((0.9 + 1e-4) * (0.9 + 1e-4) - (0.9 - 1e-4) * (0.9 - 1e-4)) / 2e-4;
    for (double beta : {0.9, 0.99, 0.999}) {
      const double v = caputo_derivative(beta, phi, 0.9);
      // d^beta t^2 = 2 t^{2-beta} / Gamma(3-beta) -> 2t as beta -> 1
      CHECK(v == doctest::Approx(2.0 * std::pow(0.9, 2.0 - beta) /
                                 gamma_fn(3.0 - beta)).epsilon(1e-3));
    }
    CHECK(caputo_derivative(1.0, phi, 0.9) == doctest::Approx(fd).epsilon(1e-3));
  }

  TEST_CASE("t = 0 is rejected") {
    auto phi = SampledFunction::from_callable([](double t) { return t; }, 1.0, 8);
    CHECK_THROWS_AS((void)caputo_derivative(0.5, phi, 0.0), std::domain_error);
    CHECK_THROWS_AS((void)caputo_derivative(1.5, phi, 0.5), std::invalid_argument);
  }

  TEST_CASE("integral of the derivative recovers phi(t) - phi(0)") {
    const int n = 2000;
    const double T = 1.0;
    for (double beta : {0.4, 0.7}) {
      auto phi = SampledFunction::from_callable(
          [](double t) { return std::sin(2.0 * t) + 3.0; }, T, n);
      // Sample the Caputo derivative on the same grid (0 at the origin, where
      // the operator is defined only as a limit and the value vanishes for
      // differentiable phi).
      std::vector<double> grid(phi.grid());
      std::vector<double> dv(grid.size(), 0.0);
      for (std::size_t i = 1; i < grid.size(); ++i)
        dv[i] = caputo_derivative(beta, phi, grid[i]);
      SampledFunction dphi(std::move(grid), std::move(dv));
      for (double t : {0.3, 0.8, 1.0}) {
        const double got = fractional_integral(beta, dphi, t);
        const double want = phi.value_at(t) - phi.value_at(0.0);
        CHECK(got == doctest::Approx(want).epsilon(2e-3));
      }
    }
  }
}
