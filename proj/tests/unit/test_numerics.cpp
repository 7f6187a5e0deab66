#include <doctest.h>

#include <cmath>
#include <vector>

#include "involute/error.hpp"
#include "involute/numerics.hpp"

using namespace involute;

TEST_SUITE("numerics") {
  TEST_CASE("adaptive Simpson") {
    CHECK(integrate([](double t) { return std::sin(t); }, 0, M_PI) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double t) { return std::exp(t); }, -1, 1, {}, {1e-13}) ==
          doctest::Approx(2 * std::sinh(1.0)).epsilon(1e-13));
    // a jump is integrated exactly once the breakpoint is supplied
    auto step = [](double t) { return t < 0.3 ? 1.0 : 5.0; };
    std::vector<double> br{0.3};
    CHECK(integrate(step, 0, 1, br) == doctest::Approx(0.3 + 3.5).epsilon(1e-14));
    CHECK(integrate_oriented([](double) { return 1.0; }, 1, 0) == doctest::Approx(-1.0));
    CHECK(integrate([](double) { return 1.0; }, 2, 2) == 0.0);
  }

  TEST_CASE("quadrature reports non-convergence") {
    QuadOptions q{1e-14, 0, 6};
    try {
      integrate([](double t) { return std::sin(1.0 / (t + 1e-6)); }, 0, 1, {}, q);
      FAIL("no error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Quadrature);
    }
  }

  TEST_CASE("tabulated primitive") {
    Primitive P([](double t) { return std::cos(t); }, {-2, 2});
    for (double t : {-2.0, -0.7, 0.0, 0.31, 2.0}) CHECK(P(t) == doctest::Approx(std::sin(t)).epsilon(1e-11));
  }

  TEST_CASE("uniform grid") {
    Grid g = Grid::uniform(1.0, 5);
    REQUIRE(g.nodes.size() == 5);
    CHECK(g.nodes[2] == 0.0);
    CHECK(g.radius() == 1.0);
  }

  TEST_CASE("RK4 oracle and residual check") {
    IvpProblem p{1, 0, 0, 0, ScalarField::constant(1.0, {-1, 1})};
    ScalarField o = oracle_ivp(p, Grid::uniform(1, 2001));
    CHECK(o(1.0) == doctest::Approx(1.3011686789397568).epsilon(1e-10));
    ScalarField exact([](double t) { return std::sin(t) + 1 - std::cos(t); }, {-1, 1});
    ResidualReport r = residual_check(exact, ScalarField::constant(1), ScalarField::constant(0), p.h,
                                      Grid::uniform(1, 101));
    CHECK(r.max_abs < 1e-7);
    ResidualReport bad = residual_check(ScalarField::constant(0, {-1, 1}), ScalarField::constant(1),
                                        ScalarField::constant(0), p.h, Grid::uniform(1, 101));
    CHECK(bad.max_abs == doctest::Approx(1.0));
  }

  TEST_CASE("shooting oracle") {
    BvpProblem p{ScalarField::from_text("cos(t)"), ScalarField::constant(0), ScalarField::constant(1), M_PI / 2};
    ScalarField s = oracle_bvp_shooting(p);
    CHECK(s(0.0) == doctest::Approx(1.6650196197568941).epsilon(1e-9));
    CHECK(s(-1.0) == doctest::Approx(1.8118347099267731).epsilon(1e-9));
  }
}
