#include <doctest.h>

#include <cmath>

#include "involute/error.hpp"
#include "involute/expr.hpp"

using namespace involute;

TEST_SUITE("expr") {
  TEST_CASE("precedence and associativity") {
    CHECK(Expr::parse("1+2*3").eval(0) == 7);
    CHECK(Expr::parse("2^3^2").eval(0) == 512);  // right-associative
    CHECK(Expr::parse("-2^2").eval(0) == -4);    // power binds tighter than unary minus
    CHECK(Expr::parse("2^-1").eval(0) == 0.5);
    CHECK(Expr::parse("(1+2)*3").eval(0) == 9);
    CHECK(Expr::parse("8/4/2").eval(0) == 1);
    CHECK(Expr::parse("1-2-3").eval(0) == -4);
    CHECK(Expr::parse("--t").eval(3) == 3);
  }

  TEST_CASE("functions, pi and the variable") {
    CHECK(Expr::parse("abs(-3)*pi").eval(0) == doctest::Approx(9.4247779607693797).epsilon(1e-15));
    CHECK(Expr::parse("sin(t)^2+cos(t)^2").eval(0.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(Expr::parse("cosh(t)-sinh(t)").eval(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(Expr::parse("ln(exp(2.5))").eval(0) == doctest::Approx(2.5));
    CHECK(Expr::parse("sqrt(16)+atan(1)*4").eval(0) == doctest::Approx(4 + M_PI));
    CHECK(Expr::parse("atanh(0.5)").eval(0) == doctest::Approx(std::atanh(0.5)));
    CHECK(Expr::parse("tan(t)").eval(0.3) == doctest::Approx(std::tan(0.3)));
    CHECK(Expr::parse("1.5e2").eval(0) == 150);
    CHECK(Expr::parse(" t * 2 ").eval(4) == 8);
  }

  TEST_CASE("syntax errors carry byte offsets") {
    auto offset_of = [](const char* src) -> long {
      try {
        Expr::parse(src);
      } catch (const ParseError& e) {
        return static_cast<long>(e.offset());
      }
      return -1;
    };
    CHECK(offset_of("cos(t") == 5);
    CHECK(offset_of("1+*2") == 2);
    CHECK(offset_of("") == 0);
    CHECK(offset_of("2 3") == 2);
    CHECK(offset_of("foo(t)") == 0);
    CHECK_THROWS_AS(Expr::parse("x+1"), ParseError);
    try {
      Expr::parse("1 + bar");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ErrorKind::UnknownIdentifier);
      CHECK(e.offset() == 4);
    }
  }

  TEST_CASE("evaluation errors instead of NaN") {
    for (const char* src : {"1/0", "ln(0)", "ln(-1)", "sqrt(-1)", "atanh(1)", "0^-1", "(-8)^(1/3)"}) {
      CAPTURE(src);
      try {
        Expr::parse(src).eval(0);
        FAIL("no error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Evaluation);
      }
    }
  }

  TEST_CASE("print round trip and substitution") {
    for (const char* src : {"-t^2", "2^3^t", "sin(t)/(1+t)", "-(t-1)*pi", "0.1*t+0.05*cos(t)"}) {
      Expr e = Expr::parse(src);
      Expr r = Expr::parse(e.print());
      CHECK(r == e);
      CHECK(r.eval(0.37) == e.eval(0.37));
    }
    Expr sq = Expr::parse("t^2+1");
    Expr comp = sq.substitute(Expr::parse("sin(t)"));
    CHECK(comp.eval(0.4) == doctest::Approx(std::sin(0.4) * std::sin(0.4) + 1));
    CHECK(!Expr::parse("pi*2").depends_on_t());
    CHECK(Expr::parse("0*t").depends_on_t());
  }
}
