#include <doctest.h>

#include <cmath>

#include "involute/error.hpp"
#include "involute/involution.hpp"

using namespace involute;

TEST_SUITE("involution") {
  TEST_CASE("verification") {
    CHECK(verify_involution(ScalarField::from_text("1/t"), {0.5, 2}).ok);
    CHECK(verify_involution(ScalarField::from_text("-t"), {-3, 3}).ok);
    CHECK(!verify_involution(ScalarField::from_text("2-t^2"), {0, 1}).ok);
    InvolutionCheck out = verify_involution(ScalarField::from_text("1/t"), {0.5, 3});
    CHECK(!out.maps_into);
    CHECK(!out.ok);
  }

  TEST_CASE("fixed point and validation") {
    Involution phi = Involution::make(ScalarField::from_text("1/t"), ScalarField::from_text("-1/t^2"), {0.5, 2});
    CHECK(phi.fixed_point == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(Involution::make(ScalarField::from_text("t"), ScalarField::constant(1), {0, 1}));
  }

  TEST_CASE("correspondence intertwines the involutions") {
    Involution phi = Involution::make(ScalarField::from_text("1/t"), ScalarField::from_text("-1/t^2"), {0.5, 2});
    Involution psi = Involution::reflection(1);
    Correspondence f = correspondence_map(phi, psi, ScalarField::from_text("1+t/2"), ScalarField::constant(0.5));
    CHECK(f.f(0.5) == doctest::Approx(4.0 / 3).epsilon(1e-12));
    CHECK(f.f_inv(4.0 / 3) == doctest::Approx(0.5).epsilon(1e-10));
    for (double s : {-0.9, -0.3, 0.2, 0.8}) CHECK(f.f(-s) == doctest::Approx(1.0 / f.f(s)).epsilon(1e-12));
    Correspondence g = inverse(f);
    for (double t : {0.6, 1.0, 1.7}) CHECK(f.f(g.f(t)) == doctest::Approx(t).epsilon(1e-10));

    Correspondence affine = correspondence_map(phi, psi);
    CHECK(affine.f(-1) == doctest::Approx(0.5));
    CHECK(affine.f(0) == doctest::Approx(1.0));
    CHECK(affine.f(1) == doctest::Approx(2.0));
  }

  TEST_CASE("change of involution and back") {
    Involution phi = Involution::make(ScalarField::from_text("1/t"), ScalarField::from_text("-1/t^2"), {0.5, 2});
    Involution psi = Involution::reflection(1);
    Correspondence f = correspondence_map(phi, psi);
    Interval d = phi.domain;
    GeneralProblem p{ScalarField::from_text("1+t", d), ScalarField::from_text("t", d), ScalarField::constant(0, d),
                     ScalarField::from_text("2+t", d), ScalarField::from_text("t^2", d), phi};
    GeneralProblem q = change_involution(p, psi, f);
    GeneralProblem back = change_involution(q, phi, inverse(f));
    for (double t : {0.6, 0.9, 1.4, 1.9}) {
      CHECK(back.a(t) == doctest::Approx(p.a(t)).epsilon(1e-9));
      CHECK(back.d(t) == doctest::Approx(p.d(t)).epsilon(1e-9));
      CHECK(back.h(t) == doctest::Approx(p.h(t)).epsilon(1e-9));
    }
  }

  TEST_CASE("transported solution solves the original problem") {
    Involution phi = Involution::make(ScalarField::from_text("1/t"), ScalarField::from_text("-1/t^2"), {0.5, 2});
    Involution psi = Involution::reflection(1);
    Interval d = phi.domain;
    GeneralProblem p{ScalarField::constant(0.2, d), ScalarField::constant(0.1, d), ScalarField::constant(0, d),
                     ScalarField::constant(1, d), ScalarField::from_text("t", d), phi};
    TransportedSolution s = solve_general(p, psi, correspondence_map(phi, psi));
    CHECK(general_residual(s.x, p).max_abs < 1e-6);
    CHECK(std::fabs(s.x(0.5) - s.x(2.0)) < 1e-8);
  }
}
