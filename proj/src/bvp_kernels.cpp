#include <algorithm>
#include <cmath>
#include <numbers>

#include "bvp_internal.hpp"
#include "involute/error.hpp"

namespace involute {

using detail::Region;
using detail::ReflectionKernel;
using detail::region_of;

namespace detail {

BvpProblem restricted(const BvpProblem& p) {
  if (!(p.T > 0.0) || !std::isfinite(p.T)) fail(ErrorKind::Domain, "T must be positive and finite");
  if (!p.a || !p.b || !p.h) fail(ErrorKind::Domain, "coefficients a, b and forcing h are required");
  Interval d{-p.T, p.T};
  return {p.a.with_domain(d), p.b.with_domain(d), p.h.with_domain(d), p.T};
}

namespace {

// n pi with n >= 0 hit by x (absolute and relative tolerance 1e-9)?
bool near_multiple_of_pi(double x) {
  double n = std::round(x / std::numbers::pi);
  return std::fabs(x - n * std::numbers::pi) <= 1e-9 * std::max(1.0, std::fabs(x));
}

}  // namespace

ReflectionKernel ReflectionKernel::make(double a, double b, double L) {
  ReflectionKernel k;
  k.a = a;
  k.b = b;
  k.L = L;
  if (L == 0.0) fail(ErrorKind::Resonant, "zero half-length: every constant solves the homogeneous problem");
  double mu = a * a - b * b;
  if (std::fabs(mu) <= 1e-12 * std::max(a * a, b * b)) {
    if (a * b < 0.0 || a == 0.0) fail(ErrorKind::Resonant, "a = -b: constants solve the homogeneous problem");
    k.kind = Kind::Linear;
    return k;
  }
  if (mu > 0.0) {
    k.kind = Kind::Trig;
    k.w = std::sqrt(mu);
    if (near_multiple_of_pi(k.w * L)) fail(ErrorKind::Resonant, "sqrt(a^2-b^2) T is a multiple of pi");
    k.den = 2.0 * k.w * std::sin(k.w * L);
  } else {
    k.kind = Kind::Hyp;
    k.w = std::sqrt(-mu);
    k.den = 2.0 * k.w * std::sinh(k.w * L);
  }
  return k;
}

}  // namespace detail

CaseTag classify_bvp(const BvpProblem& p, double tol) {
  auto q = detail::restricted(p);
  return classify_bvp(q.a, q.b, tol);
}

GreenKernel harmonic_periodic_green(double mu, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  if (mu == 0.0) fail(ErrorKind::Resonant, "mu = 0: constants are periodic solutions");
  ReflectionKernel k;
  k.L = T;
  if (mu > 0.0) {
    k.w = std::sqrt(mu);
    if (detail::near_multiple_of_pi(k.w * T)) fail(ErrorKind::Resonant, "sqrt(mu) T is a multiple of pi");
    k.kind = ReflectionKernel::Kind::Trig;
    k.den = 2.0 * k.w * std::sin(k.w * T);
  } else {
    k.w = std::sqrt(-mu);
    k.kind = ReflectionKernel::Kind::Hyp;
    k.den = 2.0 * k.w * std::sinh(k.w * T);
  }
  auto fn = [k](double t, double s) { return k.g(std::fabs(t - s)); };
  return GreenKernel(fn, {-T, T}, {-T, T}, 1.0, JumpKind::Derivative, "[-T,T]^2",
                     [](double t) { return std::vector<double>{t}; });
}

GreenKernel green_bvp_constant(double a, double b, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  double mu = a * a - b * b;
  if (std::fabs(mu) <= 1e-12 * std::max(a * a, b * b))
    fail(ErrorKind::Resonant, a * b > 0 ? "a = b: the harmonic kernel is resonant, use the C3 kernel"
                                         : "a = -b: constants solve the homogeneous problem");
  auto k = ReflectionKernel::make(a, b, T);
  auto fn = [k](double t, double s) { return k(region_of(t, s), t, s); };
  return GreenKernel(fn, {-T, T}, {-T, T}, 1.0, JumpKind::Value, "[-T,T]^2", detail::reflection_breaks);
}

GreenKernel green_bvp_c3(double a, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  if (a == 0.0) fail(ErrorKind::Unsupported, "a = 0 has no reflection term");
  auto k = ReflectionKernel::make(a, a, T);
  auto fn = [k](double t, double s) { return k(region_of(t, s), t, s); };
  return GreenKernel(fn, {-T, T}, {-T, T}, 1.0, JumpKind::Value, "[-T,T]^2", detail::reflection_breaks);
}

Primitives primitives(const ScalarField& a, const ScalarField& b, double T) {
  Interval d{-T, T};
  auto prim = [&](const ScalarField& f) {
    if (auto c = f.constant_value()) {
      double v = *c;
      return ScalarField([v](double t) { return v * t; }, d);
    }
    return Primitive([f](double t) { return f(t); }, d).field();
  };
  Primitives P;
  P.A = prim(a);
  P.B = prim(b);
  if (b.constant_value()) {
    P.B_e = ScalarField::constant(0.0, d);
  } else {
    ScalarField bb = b;
    P.B_e = Primitive([bb](double t) { return 0.5 * (bb(t) - bb(-t)); }, d).field();
  }
  return P;
}

ScalarField homogeneous_bvp_solution(const CaseTag& tag, const ScalarField& a, const ScalarField& b, double T) {
  Primitives P = primitives(a, b, T);
  auto A = P.A, B = P.B, Be = P.B_e;
  Interval d{-T, T};
  switch (tag.kind) {
    case Case::C1p: {
      double k = tag.k.value_or(0.0), w = std::sqrt(1.0 - k * k), r = (1.0 + k) / w;
      return ScalarField([=](double t) { return std::exp(-Be(t)) * (std::cos(w * A(t)) - r * std::sin(w * A(t))); }, d);
    }
    case Case::C2p: {
      double k = tag.k.value_or(2.0), m = std::sqrt(k * k - 1.0), r = (1.0 + k) / m;
      return ScalarField([=](double t) { return std::exp(-Be(t)) * (std::cosh(m * A(t)) - r * std::sinh(m * A(t))); }, d);
    }
    case Case::C3p: return ScalarField([=](double t) { return std::exp(-Be(t)) * (1.0 - 2.0 * A(t)); }, d);
    case Case::C4p: return ScalarField([=](double t) { return std::exp(-Be(t)); }, d);
    case Case::C5p: return ScalarField([=](double t) { return std::exp(-A(t) - B(t)); }, d);
    default: fail(ErrorKind::Unsupported, "no closed-form homogeneous solution in the mixed case");
  }
}

GreenKernel green_bvp_nonconstant(const BvpProblem& p0) {
  BvpProblem p = detail::restricted(p0);
  CaseTag tag = classify_bvp(p.a, p.b);
  if (tag.kind != Case::C1p && tag.kind != Case::C2p && tag.kind != Case::C3p)
    fail(ErrorKind::WrongCase, std::string("kernel needs case C1', C2' or C3', got ") + case_name(tag.kind));
  const double k = *tag.k;
  Primitives P = primitives(p.a, p.b, p.T);
  const double L = P.A(p.T);
  if (std::fabs(L) <= 1e-12 * std::max(1.0, p.T)) fail(ErrorKind::Resonant, "A(T) = 0: the reduced problem is resonant");
  if (tag.kind == Case::C1p) {
    double wl = std::sqrt(1.0 - k * k) * L;
    if (detail::near_multiple_of_pi(wl)) fail(ErrorKind::Resonant, "(1-k^2) A(T)^2 is a square multiple of pi");
    if (std::fabs(std::cos(wl)) <= 1e-12) fail(ErrorKind::Resonant, "cos(sqrt(1-k^2) A(T)) = 0 is excluded");
  }
  auto K = ReflectionKernel::make(1.0, tag.kind == Case::C3p ? 1.0 : k, L);
  auto A = P.A, Be = P.B_e;
  auto fn = [K, A, Be](double t, double s) {
    return std::exp(Be(s) - Be(t)) * K(region_of(t, s), A(t), A(s));
  };
  auto row = [K, A, Be](double t) {
    double At = A(t), Bt = Be(t);
    return std::function<double(double)>(
        [K, A, Be, t, At, Bt](double s) { return std::exp(Be(s) - Bt) * K(region_of(t, s), At, A(s)); });
  };
  Interval d{-p.T, p.T};
  return GreenKernel(fn, d, d, 1.0, JumpKind::Value, "[-T,T]^2", detail::reflection_breaks, row);
}

ScalarField solve_with_kernel(const GreenKernel& K, const ScalarField& h, Interval domain, const QuadOptions& q) {
  const Interval sd = K.s_domain();
  return ScalarField(
      [K, h, sd, q](double t) {
        auto row = K.row(t);
        auto bp = K.breakpoints(t);
        return integrate([&](double s) { return row(s) * h(s); }, sd.lo, sd.hi, bp, q);
      },
      domain);
}

ScalarField solve_bvp(const BvpProblem& p0, const BvpOptions& opt) {
  BvpProblem p = detail::restricted(p0);
  GreenKernel G = green_bvp_nonconstant(p);
  return solve_with_kernel(G, p.h, {-p.T, p.T}, opt.quad);
}

GreenKernel green_ode_periodic(const ScalarField& v, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  Interval d{-T, T};
  ScalarField V = v.constant_value() ? ScalarField([c = *v.constant_value()](double t) { return c * t; }, d)
                                     : Primitive([v](double t) { return v(t); }, d).field();
  double total = V(T) - V(-T);
  double scale = integrate([&](double t) { return std::fabs(v(t)); }, -T, T);
  if (std::fabs(total) <= 1e-12 * (1.0 + scale)) fail(ErrorKind::Resonant, "v has zero mean: constants are resonant");
  double tau = 1.0 / (1.0 - std::exp(-total));
  auto fn = [V, tau](double t, double s) { return (s <= t ? tau : tau - 1.0) * std::exp(V(s) - V(t)); };
  auto row = [V, tau](double t) {
    double Vt = V(t);
    return std::function<double(double)>(
        [V, tau, t, Vt](double s) { return (s <= t ? tau : tau - 1.0) * std::exp(V(s) - Vt); });
  };
  return GreenKernel(fn, d, d, 1.0, JumpKind::Value, "[-T,T]^2", [](double t) { return std::vector<double>{t}; },
                     row);
}

double bound_F(const ScalarField& v, double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  auto f = [&](double t) { return v(t); };
  double pos = integrate([&](double t) { return std::max(f(t), 0.0); }, -T, T);
  double neg = integrate([&](double t) { return std::max(-f(t), 0.0); }, -T, T);
  if (std::fabs(pos - neg) <= 1e-12 * (1.0 + pos + neg)) fail(ErrorKind::Resonant, "v has zero mean");
  // e^{p+n} / |e^p - e^n| = 1 / |e^{-n} - e^{-p}|, which avoids overflow
  return 1.0 / std::fabs(std::exp(-neg) - std::exp(-pos));
}

}  // namespace involute
