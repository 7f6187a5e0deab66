#include <doctest.h>

#include <cmath>

#include "involute/bvp.hpp"
#include "involute/error.hpp"

using namespace involute;

namespace {

ScalarField F(const char* s) { return ScalarField::from_text(s); }

BvpProblem bvp(const char* a, const char* b, const char* h, double T) { return {F(a), F(b), F(h), T}; }

double residual(const ScalarField& u, const BvpProblem& p) {
  return residual_check(u, p.a, p.b, p.h, Grid::uniform(p.T, 101)).max_abs;
}

}  // namespace

TEST_SUITE("bvp") {
  TEST_CASE("harmonic periodic kernels") {
    CHECK(harmonic_periodic_green(1, 1)(0, 0) == doctest::Approx(0.32104630796716535).epsilon(1e-13));
    CHECK(harmonic_periodic_green(-1, 1)(0, 0) == doctest::Approx(-0.65651764274966565).epsilon(1e-13));
  }

  TEST_CASE("a = b kernel is the limit of the constant-coefficient kernel") {
    CHECK(green_bvp_c3(1, 1)(0.5, 0.2) == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(green_bvp_c3(1, 2)(-0.7, 1.1) == doctest::Approx(-0.24).epsilon(1e-13));
    CHECK(green_bvp_c3(2, 0.5)(0.1, -0.3) == doctest::Approx(0.27).epsilon(1e-13));
    GreenKernel near = green_bvp_constant(1, 1 - 1e-6, 1);
    CHECK(near(0.5, 0.2) == doctest::Approx(0.7).epsilon(1e-4));
  }

  TEST_CASE("kernels jump by one across the diagonal") {
    for (const GreenKernel& K : {green_bvp_constant(1.3, 0.4, 1), green_bvp_constant(0.4, 1.3, 1), green_bvp_c3(0.8, 1),
                                 green_bvp_nonconstant(bvp("cos(t)", "0.5*cos(t)+sin(t)", "1", 1))}) {
      for (double t : {-0.6, 0.25, 0.7}) CHECK(K(t, t - 1e-9) - K(t, t + 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("thresholds and bounds") {
    CHECK(sigma_threshold(2) == doctest::Approx(0.38017299815047317).epsilon(1e-13));
    CHECK(sigma_threshold(0.5) == doctest::Approx(0.60459978807807262).epsilon(1e-13));
    CHECK(sigma_threshold(0) == doctest::Approx(M_PI / 4).epsilon(1e-13));
    CHECK(sigma_threshold(1 - 1e-9) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(bound_F(ScalarField::constant(1), 1) == doctest::Approx(1.1565176427496657).epsilon(1e-12));
    CHECK(green_ode_periodic(ScalarField::constant(1), 1)(1, 0) == doctest::Approx(0.42545906411966077).epsilon(1e-12));
  }

  TEST_CASE("phasor rewrites") {
    for (auto [al, be] : {std::pair{2.0, 1.0}, {1.0, 2.0}, {-2.0, 1.0}, {1.0, -2.0}, {1.0, 1.0}, {-1.0, 1.0}}) {
      Phasor ph = hyperbolic_phasor(al, be);
      for (double g : {-1.2, 0.0, 0.8}) CHECK(ph(g) == doctest::Approx(al * std::cosh(g) + be * std::sinh(g)));
    }
  }

  TEST_CASE("reducible solves match the shooting references") {
    BvpProblem p = bvp("cos(t)", "0", "1", M_PI / 2);
    ScalarField u = solve_bvp(p);
    CHECK(u(0.0) == doctest::Approx(1.6650196197568941).epsilon(1e-10));
    CHECK(u(0.5) == doctest::Approx(1.305998740491846).epsilon(1e-10));
    CHECK(u(1.0) == doctest::Approx(1.1288166178530925).epsilon(1e-10));
    CHECK(u(-1.0) == doctest::Approx(1.8118347099267731).epsilon(1e-10));
    CHECK(std::fabs(u(p.T) - u(-p.T)) < 1e-10);
    CHECK(residual(u, p) < 1e-6);

    BvpProblem q = bvp("cos(t)", "sin(t)", "1", M_PI / 2);
    ScalarField v = solve_bvp(q);
    CHECK(v(0.0) == doctest::Approx(2.603873767108935).epsilon(1e-10));
    CHECK(v(0.5) == doctest::Approx(1.5302113746676149).epsilon(1e-10));
    CHECK(v(-1.0) == doctest::Approx(1.887091658150963).epsilon(1e-10));
  }

  TEST_CASE("constant sign of the kernel") {
    SignVerdict ok = constant_sign_check(bvp("1", "0", "1", M_PI / 4 - 0.01));
    CHECK(ok.sign == Sign::Positive);
    CHECK(ok.consistent);
    CHECK(ok.sampled_min > 0);
    SignVerdict no = constant_sign_check(bvp("1", "0", "1", M_PI / 4 + 0.05));
    CHECK(no.sign == Sign::Unknown);
    CHECK(no.sampled_min < 0);
    CHECK_THROWS(constant_sign_check(bvp("1", "-1", "1", 1)));
  }

  TEST_CASE("resonant families") {
    BvpProblem p = bvp("1", "-1-sin(t)", "1", 1);
    SolutionFamily fam = solve_resonant_c4(p);
    CHECK(fam.obstruction == doctest::Approx(0.86141724423050651).epsilon(1e-10));
    CHECK(!fam.solvable);

    BvpProblem q = bvp("1", "-1-sin(t)", "t", 1);  // odd forcing: obstruction vanishes
    SolutionFamily ok = solve_resonant_c4(q);
    CHECK(ok.solvable);
    for (double c : {-1.0, 0.0, 2.0}) {
      ScalarField u = ok.member(c);
      CHECK(residual(u, q) < 1e-6);
      CHECK(std::fabs(u(1) - u(-1)) < 1e-9);
    }
    BvpProblem r = bvp("t", "t^3", "t^2", 1);
    CHECK(!solve_resonant_c5(r).solvable);
    BvpProblem s = bvp("t", "t^3", "t", 1);
    SolutionFamily f5 = solve_resonant_c5(s);
    REQUIRE(f5.solvable);
    CHECK(residual(f5.member(0.5), s) < 1e-6);
    try {
      solve_periodic(p);
      FAIL("unsolvable resonant problem accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Resonant);
    }
  }

  TEST_CASE("Picard iteration for a mixed problem") {
    BvpProblem p = bvp("0.1", "0.1*t+0.05*cos(t)", "1", 1);
    PicardResult r = solve_mixed_picard(p);
    CHECK(r.contraction < 0.3);
    CHECK(r.iterations < 50);
    CHECK(r.u(0.0) == doctest::Approx(7.158153863439072).epsilon(1e-9));
    CHECK(r.u(0.5) == doctest::Approx(7.0417585988213719).epsilon(1e-9));
    CHECK(r.u(-1.0) == doctest::Approx(6.8080428585486073).epsilon(1e-9));
    CHECK(residual(r.u, p) < 1e-6);
  }

  TEST_CASE("contraction gate") {
    BvpProblem p = bvp("1", "t+cos(t)", "t", 1);
    REQUIRE(classify_bvp(p).kind == Case::Mixed);
    REQUIRE(contraction_constant(p) >= 1);
    try {
      solve_mixed_picard(p);
      FAIL("gate not enforced");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotGuaranteed);
    }
  }
}
