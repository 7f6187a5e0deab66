#include <doctest.h>

#include <cmath>

#include "involute/error.hpp"
#include "involute/ivp.hpp"

using namespace involute;

namespace {

IvpProblem problem(double a, double b, const char* h, double t0 = 0, double c = 0) {
  return {a, b, t0, c, ScalarField::from_text(h, {-1, 1})};
}

double max_gap(const ScalarField& u, const ScalarField& v) {
  double m = 0;
  for (int i = 0; i <= 40; ++i) {
    double t = -1 + i / 20.0;
    m = std::max(m, std::fabs(u(t) - v(t)));
  }
  return m;
}

}  // namespace

TEST_SUITE("ivp") {
  TEST_CASE("homogeneous pair solves the reflected equations") {
    HomogeneousPair hp = homogeneous_pair(1, 0);
    CHECK(hp.tag.kind == Case::C1);
    CHECK(hp.u(0.0) == 1.0);
    CHECK(hp.u(0.5) == doctest::Approx(std::cos(0.5) - std::sin(0.5)));
    CHECK(hp.v(0.5) == doctest::Approx(std::cos(0.5) + std::sin(0.5)));
  }

  TEST_CASE("uniqueness fails at zeros of the homogeneous solution") {
    CHECK(uniqueness_check(1, 0, 0.0));
    CHECK(!uniqueness_check(1, 0, M_PI / 4));
    CHECK(!uniqueness_check(1, 1, 0.5));  // C3.1: u = 1 - 2at
    CHECK(uniqueness_check(1, -1, 0.5));
    try {
      solve_ivp(problem(1, 0, "1", M_PI / 4, 0));
      FAIL("accepted a degenerate t0");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoUniqueSolution);
    }
  }

  TEST_CASE("explicit kernel at a = 1, b = 0") {
    GreenKernel G = green_ivp(1, 0);
    CHECK(G(1, 0.5) == doctest::Approx(0.87758256189037272).epsilon(1e-14));
    CHECK(G(1, -0.5) == doctest::Approx(0.479425538604203).epsilon(1e-14));
    CHECK(G(1, 1.5) == 0.0);
  }

  TEST_CASE("assembled kernel matches the explicit one") {
    for (auto [a, b] : {std::pair{2.0, 0.5}, {0.5, 2.0}, {1.0, 1.0}, {1.0, -1.0}, {-1.5, 0.3}}) {
      GreenKernel E = green_ivp(a, b), A = green_ivp_assembled(a, b);
      for (double t : {-0.9, -0.2, 0.35, 0.8})
        for (double s : {-0.7, -0.1, 0.15, 0.6}) CHECK(A(t, s) == doctest::Approx(E(t, s)).epsilon(1e-10));
    }
  }

  TEST_CASE("kernel solution with forcing 1") {
    ScalarField u = solve_ivp(problem(1, 0, "1"));
    CHECK(u(1.0) == doctest::Approx(1.3011686789397568).epsilon(1e-12));
    CHECK(u(0.0) == doctest::Approx(0.0).epsilon(1e-14));
  }

  TEST_CASE("degenerate closed forms agree with the kernel solution") {
    IvpProblem p31 = problem(0.7, 0.7, "exp(t)", 0.1, 2.0), p32 = problem(0.7, -0.7, "cos(3*t)", -0.2, 1.0);
    CHECK(max_gap(alt_solve_c31(p31), solve_ivp(p31)) < 1e-8);
    CHECK(max_gap(alt_solve_c32(p32), solve_ivp(p32)) < 1e-8);
    CHECK_THROWS(alt_solve_c31(p32));
  }

  TEST_CASE("thresholds") {
    CHECK(eta(2, 0) == doctest::Approx(M_PI / 4).epsilon(1e-12));
    CHECK(eta(std::sqrt(2.0), 1) == doctest::Approx(M_PI / 4).epsilon(1e-12));
    CHECK(eta(std::sqrt(2.0), -1) == doctest::Approx(2.3561944901923449).epsilon(1e-12));
    CHECK_THROWS(eta(1, 2));
  }

  TEST_CASE("sign report") {
    SignReport r = sign_classify_ivp(2, 0);
    REQUIRE(r.regions.size() == 4);
    CHECK(r.regions[0].region == "0<s<t");
    CHECK(r.regions[0].sign == Sign::Positive);
    CHECK(r.regions[0].t_hi == doctest::Approx(M_PI / 4));
    // the explicit kernel agrees with the verdict just inside the wedge
    GreenKernel G = green_ivp(2, 0);
    CHECK(G(0.7, 0.3) > 0);
    CHECK(G(0.9, 0.0) < 0);
  }
}
