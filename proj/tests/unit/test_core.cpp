#include <doctest.h>

#include <cmath>

#include "involute/core.hpp"
#include "involute/error.hpp"

using namespace involute;

TEST_SUITE("core") {
  TEST_CASE("parity split of exp") {
    ParityPair p = parity_split(ScalarField::from_text("exp(t)", {-2, 2}));
    CHECK(p.even(1.0) == doctest::Approx(1.5430806348152438).epsilon(1e-15));
    CHECK(p.odd(1.0) == doctest::Approx(1.1752011936438015).epsilon(1e-15));
    CHECK(p.odd(0.0) == 0.0);
    CHECK_THROWS(parity_split(ScalarField::from_text("t", {0, 1})));
  }

  TEST_CASE("oriented indicator") {
    CHECK(oriented_indicator(0, 1, 0.5) == 1);
    CHECK(oriented_indicator(1, 0, 0.5) == -1);
    CHECK(oriented_indicator(0, 1, 2) == 0);
    CHECK(oriented_indicator(-1, -2, -1.5) == -1);
  }

  TEST_CASE("constant IVP cases") {
    CHECK(classify_ivp(2, 0).kind == Case::C1);
    CHECK(classify_ivp(1, 2).kind == Case::C2);
    CHECK(classify_ivp(1, 1).kind == Case::C3_1);
    CHECK(classify_ivp(1, -1).kind == Case::C3_2);
    CHECK(classify_ivp(-3, -3).kind == Case::C3_1);
    try {
      classify_ivp(0, 1);
      FAIL("a = 0 accepted");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Unsupported);
    }
  }

  TEST_CASE("non-constant BVP cases") {
    Interval d{-1, 1};
    auto f = [&](const char* s) { return ScalarField::from_text(s, d); };
    auto k_of = [](const CaseTag& t) { return t.k.value_or(NAN); };
    CaseTag c1 = classify_bvp(f("cos(t)"), f("0.5*cos(t)+sin(t)"));
    CHECK(c1.kind == Case::C1p);
    CHECK(k_of(c1) == doctest::Approx(0.5));
    CHECK(classify_bvp(f("1"), f("2")).kind == Case::C2p);
    CHECK(classify_bvp(f("cos(t)"), f("cos(t)+t")).kind == Case::C3p);
    CHECK(classify_bvp(f("1"), f("-1")).kind == Case::C4p);
    CHECK(classify_bvp(f("t"), f("t^3")).kind == Case::C5p);
    CHECK(classify_bvp(f("0.1"), f("0.1*t+0.05*cos(t)")).kind == Case::Mixed);
    CHECK(to_string(c1).find("C1'") == 0);
    CHECK_THROWS(classify_bvp(ScalarField::from_text("1", {0, 1}), ScalarField::from_text("0", {0, 1})));
  }

  TEST_CASE("scalar field domain checks") {
    ScalarField f = ScalarField::from_text("1/t", {0.5, 2});
    CHECK(f.at(1.0) == 1.0);
    CHECK_THROWS(f.at(3.0));
    CHECK(ScalarField::from_text("2*pi").constant_value().has_value());
    CHECK(!ScalarField::from_text("t").constant_value().has_value());
  }
}
