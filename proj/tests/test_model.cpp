#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pofrac/analysis.hpp"
#include "pofrac/errors.hpp"
#include "pofrac/model.hpp"
#include "pofrac/model_io.hpp"

#include "oracles.hpp"

using namespace pofrac;

namespace {

ModelParams random_params(std::uint64_t& st) {
  ModelParams p;
  p.c0 = 0.1 + 2.0 * oracles::unit_draw(st);
  p.c1 = 0.1 + 2.0 * oracles::unit_draw(st);
  p.c2 = 0.1 + 2.0 * oracles::unit_draw(st);
  p.c3 = 0.1 + 2.0 * oracles::unit_draw(st);
  p.c4 = 0.1 + 2.0 * oracles::unit_draw(st);
  p.h = 0.1 + 2.0 * oracles::unit_draw(st);
  p.H = 2.0 * oracles::unit_draw(st);
  p.delta = 2.0 * oracles::unit_draw(st);
  p.v = 2.0 * oracles::unit_draw(st);
  p.B = 2.0 * oracles::unit_draw(st);
  p.beta_pred = 2.0 * oracles::unit_draw(st);
  p.xi = 2.0 * oracles::unit_draw(st);
  p.m = 2.0 * oracles::unit_draw(st);
  p.gamma = 2.0 * oracles::unit_draw(st);
  p.sigma = 2.0 * oracles::unit_draw(st);
  p.mu = 2.0 * oracles::unit_draw(st);
  return p;
}

}  // namespace

TEST_SUITE("model_types") {
  TEST_CASE("state rejects negative components") {
    CHECK_THROWS_AS(State(-0.1, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(State(0.0, 0.0, std::nan("")), std::invalid_argument);
    State ok(0.0, 1.0, 2.0);
    CHECK(one_norm_state(ok) == 3.0);
  }

  TEST_CASE("params validation") {
    ModelParams p = ModelParams::all_ones();
    CHECK_NOTHROW(p.validate());
    p.mu = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = ModelParams::all_ones();
    p.c0 = 0.0;  // H > 0 demands c0 > 0
    CHECK_THROWS_AS(p.validate(), singular_parameter);
    p.H = 0.0;   // with the coefficient off, c0 = 0 is fine
    CHECK_NOTHROW(p.validate());
  }

  TEST_CASE("linear part norm identity over random draws") {
    std::uint64_t st = 11;
    for (int i = 0; i < 100; ++i) {
      ModelParams p = random_params(st);
      LinearPart A = LinearPart::from_params(p);
      CHECK(A.diagonal[0] <= 0.0);
      CHECK(A.diagonal[1] <= 0.0);
      CHECK(A.diagonal[2] <= 0.0);
      CHECK(A.one_norm() == p.m + p.sigma + p.mu);
    }
  }
}

TEST_SUITE("model_rhs") {
  TEST_CASE("origin is an equilibrium") {
    ModelParams p = ModelParams::all_ones();
    const Vec3 f = rhs_nonlinear(p, {0.0, 0.0, 0.0});
    CHECK(f[0] == 0.0);
    CHECK(f[1] == 0.0);
    CHECK(f[2] == 0.0);
    const Vec3 g = rhs_full(p, {0.0, 0.0, 0.0});
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 0.0);
  }

  TEST_CASE("all-ones point values") {
    // Hand evaluation of the three displayed components at x = (1,1,1):
    //   f1 = 1/2 - 1/2 - 1/2 = -1/2
    //   f2 = (1/2 - 1)*1 - 1/2 = -1
    //   f3 = 1/((1+1)(1+1))   = 1/4
    ModelParams p = ModelParams::all_ones();
    const Vec3 f = rhs_nonlinear(p, {1.0, 1.0, 1.0});
    CHECK(f[0] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(f[1] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(f[2] == doctest::Approx(0.25).epsilon(1e-15));
    const Vec3 g = rhs_full(p, {1.0, 1.0, 1.0});
    CHECK(g[0] == doctest::Approx(-1.5).epsilon(1e-15));
    CHECK(g[1] == doctest::Approx(-2.0).epsilon(1e-15));
    CHECK(g[2] == doctest::Approx(-0.75).epsilon(1e-15));
  }

  TEST_CASE("x2 = 0 factors out of everything but the respiration term") {
    ModelParams p = ModelParams::all_ones();
    p.v = 0.7;
    p.c3 = 1.3;
    for (double x1 : {0.0, 0.5, 2.0}) {
      for (double x3 : {0.0, 1.5}) {
        const Vec3 f = rhs_nonlinear(p, {x1, 0.0, x3});
        CHECK(f[0] == doctest::Approx(-p.v * x1 * x3 / (x1 + p.c3)).epsilon(1e-15));
        CHECK(f[1] == 0.0);
        CHECK(f[2] == 0.0);
      }
    }
  }

  TEST_CASE("zero linear rates make full and nonlinear parts coincide") {
    ModelParams p = ModelParams::all_ones();
    p.m = p.sigma = p.mu = 0.0;
    std::uint64_t st = 5;
    for (int i = 0; i < 50; ++i) {
      const Vec3 x{2.0 * oracles::unit_draw(st), 2.0 * oracles::unit_draw(st),
                   2.0 * oracles::unit_draw(st)};
      const Vec3 a = rhs_nonlinear(p, x);
      const Vec3 b = rhs_full(p, x);
      CHECK(a[0] == b[0]);
      CHECK(a[1] == b[1]);
      CHECK(a[2] == b[2]);
    }
  }

  TEST_CASE("third component is nonnegative on the octant") {
    std::uint64_t st = 77;
    for (int i = 0; i < 500; ++i) {
      ModelParams p = random_params(st);
      const Vec3 x{3.0 * oracles::unit_draw(st), 3.0 * oracles::unit_draw(st),
                   3.0 * oracles::unit_draw(st)};
      CHECK(rhs_nonlinear(p, x)[2] >= 0.0);
    }
  }

  TEST_CASE("locally Lipschitz with the analytic constant") {
    ModelParams p = ModelParams::all_ones();
    StateBox box{1.0, 1.0, 1.0};
    const double L = lipschitz_constants(p, box).L;
    std::uint64_t st = 99;
    for (int i = 0; i < 10000; ++i) {
      const Vec3 x{oracles::unit_draw(st), oracles::unit_draw(st),
                   oracles::unit_draw(st)};
      const Vec3 y{oracles::unit_draw(st), oracles::unit_draw(st),
                   oracles::unit_draw(st)};
      const Vec3 dxy{x[0] - y[0], x[1] - y[1], x[2] - y[2]};
      if (one_norm(dxy) < 1e-12) continue;
      const Vec3 fx = rhs_nonlinear(p, x);
      const Vec3 fy = rhs_nonlinear(p, y);
      const Vec3 df{fx[0] - fy[0], fx[1] - fy[1], fx[2] - fy[2]};
      CHECK(one_norm(df) <= L * one_norm(dxy) * (1.0 + 1e-12));
    }
  }

  TEST_CASE("zero half-saturation with live coefficient is singular") {
    ModelParams p = ModelParams::all_ones();
    p.c0 = 0.0;
    CHECK_THROWS_AS((void)rhs_nonlinear(p, {0.0, 1.0, 1.0}), singular_parameter);
  }
}

TEST_SUITE("model_io") {
  TEST_CASE("round trip and strict key checking") {
    ModelParams p = ModelParams::all_ones();
    p.delta = 0.25;
    ModelParams q = parse_params_json(params_to_json(p));
    CHECK(q.delta == 0.25);
    CHECK(q.mu == 1.0);

    CHECK_THROWS_WITH_AS(
        (void)parse_params_json(R"({"c0":1,"c1":1,"c2":1,"c3":1,"c4":1,"h":1,
          "H":1,"delta":1,"v":1,"B":1,"beta_pred":1,"xi":1,"m":1,"gamma":1,
          "sigma":1})"),
        doctest::Contains("mu"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        (void)parse_params_json(R"({"c0":1,"c1":1,"c2":1,"c3":1,"c4":1,"h":1,
          "H":1,"delta":1,"v":1,"B":1,"beta_pred":1,"xi":1,"m":1,"gamma":1,
          "sigma":1,"mu":1,"extra":2})"),
        doctest::Contains("extra"), std::invalid_argument);
    // metadata object is tolerated
    CHECK_NOTHROW((void)parse_params_json(R"({"c0":1,"c1":1,"c2":1,"c3":1,
      "c4":1,"h":1,"H":1,"delta":1,"v":1,"B":1,"beta_pred":1,"xi":1,"m":1,
      "gamma":1,"sigma":1,"mu":1,"metadata":{"source":"test"}})"));
  }
}
