#include <cmath>
#include <cstdio>

#include "bvp_internal.hpp"
#include "involute/error.hpp"

namespace involute {

namespace {

double l1_norm(const ScalarField& h, double T) {
  return integrate([&](double t) { return std::fabs(h(t)); }, -T, T);
}

}  // namespace

SolutionFamily solve_resonant_c4(const BvpProblem& p0) {
  BvpProblem p = detail::restricted(p0);
  if (classify_bvp(p.a, p.b).kind != Case::C4p) fail(ErrorKind::WrongCase, "solve_resonant_c4 needs case C4'");
  const double T = p.T;
  Interval d{-T, T};
  Primitives P = primitives(p.a, p.b, T);
  auto Be = P.B_e;
  auto [ae, ao] = parity_split(p.a);
  auto [he, ho] = parity_split(p.h);
  (void)ao;
  (void)ho;

  // inner(s) = int_0^s e^{B_e} h_e ;  outer(t) = int_0^t (e^{B_e} h + 2 a_e inner)
  Primitive inner([=](double r) { return std::exp(Be(r)) * he(r); }, d);
  ScalarField h = p.h, aev = ae;
  Primitive outer([=](double s) { return std::exp(Be(s)) * h(s) + 2.0 * aev(s) * inner(s); }, d);

  SolutionFamily fam;
  fam.obstruction = integrate([&](double s) { return std::exp(Be(s)) * he(s); }, 0.0, T, {}, {1e-12});
  fam.tolerance = 1e-9 * (1.0 + l1_norm(p.h, T));
  fam.solvable = std::fabs(fam.obstruction) <= fam.tolerance;
  fam.member = [=](double c) {
    return ScalarField([=](double t) { return std::exp(-Be(t)) * (c + outer(t)); }, d);
  };
  return fam;
}

SolutionFamily solve_resonant_c5(const BvpProblem& p0) {
  BvpProblem p = detail::restricted(p0);
  if (classify_bvp(p.a, p.b).kind != Case::C5p) fail(ErrorKind::WrongCase, "solve_resonant_c5 needs case C5'");
  const double T = p.T;
  Interval d{-T, T};
  Primitives P = primitives(p.a, p.b, T);
  auto A = P.A, B = P.B;
  auto [he, ho] = parity_split(p.h);

  Primitive even_part([=](double s) { return std::exp(B(s) - A(s)) * he(s); }, d);
  Primitive odd_part([=](double s) { return std::exp(A(s) + B(s)) * ho(s); }, d);

  SolutionFamily fam;
  fam.obstruction = integrate([&](double s) { return std::exp(B(s) - A(s)) * he(s); }, 0.0, T, {}, {1e-12});
  fam.tolerance = 1e-9 * (1.0 + l1_norm(p.h, T));
  fam.solvable = std::fabs(fam.obstruction) <= fam.tolerance;
  fam.member = [=](double c) {
    return ScalarField(
        [=](double t) {
          double a = A(t), b = B(t);
          return std::exp(a - b) * even_part(t) + std::exp(-a - b) * (c + odd_part(t));
        },
        d);
  };
  return fam;
}

}  // namespace involute
