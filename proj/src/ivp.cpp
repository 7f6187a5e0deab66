#include "involute/ivp.hpp"

#include <cmath>
#include <numbers>

#include "involute/error.hpp"

namespace involute {

namespace {

using std::numbers::pi;

// Homogeneous solution of u' + a u(-t) + b u = 0 with u(0) = 1.
double u_tilde(Case c, double a, double b, double w, double t) {
  switch (c) {
    case Case::C1: return std::cos(w * t) - (a + b) / w * std::sin(w * t);
    case Case::C2: return std::cosh(w * t) - (a + b) / w * std::sinh(w * t);
    case Case::C3_1: return 1.0 - 2.0 * a * t;
    case Case::C3_2: return 1.0;
    default: return 0.0;
  }
}

Case mirror_case(Case c) {
  if (c == Case::C3_1) return Case::C3_2;
  if (c == Case::C3_2) return Case::C3_1;
  return c;
}

double omega_of(double a, double b) { return std::sqrt(std::fabs(a * a - b * b)); }

std::vector<double> ivp_breaks(double t) { return {-std::fabs(t), 0.0, std::fabs(t)}; }

}  // namespace

HomogeneousPair homogeneous_pair(double a, double b) {
  CaseTag tag = classify_ivp(a, b);
  double w = omega_of(a, b);
  Case cu = tag.kind, cv = mirror_case(tag.kind);
  HomogeneousPair hp;
  hp.tag = tag;
  hp.omega = w;
  hp.u = ScalarField([=](double t) { return u_tilde(cu, a, b, w, t); }, Interval::all());
  hp.v = ScalarField([=](double t) { return u_tilde(cv, -a, b, w, t); }, Interval::all());
  return hp;
}

bool uniqueness_check(double a, double b, double t0) {
  CaseTag tag = classify_ivp(a, b);
  const double tol = 1e-12;
  double w = omega_of(a, b);
  switch (tag.kind) {
    case Case::C1: {
      // zeros of cos wt - ((a+b)/w) sin wt: t = (atan(w/(a+b)) + k pi)/w
      double base = (a + b == 0.0) ? pi / 2 : std::atan(w / (a + b));
      double k = std::round((w * t0 - base) / pi);
      double root = (base + k * pi) / w;
      return std::fabs(t0 - root) > tol * std::max(1.0, std::fabs(t0));
    }
    case Case::C2: {
      double r = w / (a + b);
      if (!(std::fabs(r) < 1.0)) return true;  // tanh never reaches r: no zero (ab <= 0)
      double root = std::atanh(r) / w;
      return std::fabs(t0 - root) > tol * std::max(1.0, std::fabs(t0));
    }
    case Case::C3_1: return std::fabs(t0 - 1.0 / (2.0 * a)) > tol * std::max(1.0, std::fabs(t0));
    default: return true;
  }
}

GreenKernel green_ivp(double a, double b) {
  CaseTag tag = classify_ivp(a, b);
  const double w = omega_of(a, b);
  const Case c = tag.kind;

  // Value on the wedge 0<=s<=t (for t>=0) and on -t<s<0; the other two wedges are their negatives.
  auto diag = [=](double t, double s) {
    switch (c) {
      case Case::C1: return std::cos(w * (s - t)) + b / w * std::sin(w * (s - t));
      case Case::C2: return std::cosh(w * (s - t)) + b / w * std::sinh(w * (s - t));
      case Case::C3_1: return 1.0 + a * (s - t);
      default: return 1.0 + a * (t - s);
    }
  };
  auto anti = [=](double t, double s) {
    switch (c) {
      case Case::C1: return a / w * std::sin(w * (s + t));
      case Case::C2: return a / w * std::sinh(w * (s + t));
      default: return a * (s + t);
    }
  };
  auto fn = [=](double t, double s) {
    if (t >= 0.0) {
      if (s >= 0.0 && s <= t) return diag(t, s);
      if (s < 0.0 && s > -t) return anti(t, s);
    } else {
      if (s <= 0.0 && s >= t) return -diag(t, s);
      if (s > 0.0 && s < -t) return -anti(t, s);
    }
    return 0.0;
  };
  return GreenKernel(fn, Interval::all(), Interval::all(), 1.0, JumpKind::Value, "|s| <= |t|", ivp_breaks);
}

GreenKernel green_ivp_assembled(double a, double b) {
  HomogeneousPair hp = homogeneous_pair(a, b);
  auto u = hp.u, v = hp.v;
  auto chi = [](double lo, double hi, double s) {
    // oriented indicator with the boundary convention used by the explicit kernel at s = 0
    if (s == 0.0) return (lo == 0.0 && hi != 0.0) ? (hi > 0 ? 1.0 : -1.0) : 0.0;
    return oriented_indicator(lo, hi, s);
  };
  auto fn = [=](double t, double s) {
    double us = u(-s), vs = v(-s), ut = u(t), vt = v(t);
    return 0.5 * ((us * vt + vs * ut) * chi(0.0, t, s) + (us * vt - vs * ut) * chi(-t, 0.0, s));
  };
  return GreenKernel(fn, Interval::all(), Interval::all(), 1.0, JumpKind::Value, "|s| <= |t|", ivp_breaks);
}

namespace {

void check_ivp(const IvpProblem& p) {
  if (!p.h) fail(ErrorKind::Domain, "forcing term missing");
  if (!p.h.domain().symmetric() || !std::isfinite(p.h.domain().hi))
    fail(ErrorKind::Domain, "forcing must live on a bounded interval symmetric about 0");
  if (!p.h.domain().contains(p.t0)) fail(ErrorKind::Domain, "t0 outside the forcing's domain");
}

}  // namespace

ScalarField solve_ivp(const IvpProblem& p, const IvpOptions& opt) {
  check_ivp(p);
  if (!uniqueness_check(p.a, p.b, p.t0))
    fail(ErrorKind::NoUniqueSolution, "t0 is a zero of the homogeneous solution: no unique solution");
  GreenKernel G = green_ivp(p.a, p.b);
  HomogeneousPair hp = homogeneous_pair(p.a, p.b);
  ScalarField h = p.h;
  QuadOptions q = opt.quad;
  auto particular = [G, h, q](double t) {
    if (t == 0.0) return 0.0;
    auto row = G.row(t);
    auto bp = G.breakpoints(t);
    double r = std::fabs(t);
    return integrate([&](double s) { return row(s) * h(s); }, -r, r, bp, q);
  };
  double lambda = (p.c - particular(p.t0)) / hp.u(p.t0);
  ScalarField u = hp.u;
  return ScalarField([particular, u, lambda](double t) { return particular(t) + lambda * u(t); }, p.h.domain());
}

namespace {

// H(t) = int_{t0}^t h,  HH(t) = int_{t0}^t (t - s) h(s) ds  (repeated integral)
struct Antiderivatives {
  ScalarField h;
  double t0;
  QuadOptions q;
  double H(double t) const {
    auto hh = h;
    return integrate_oriented([&](double s) { return hh(s); }, t0, t, {}, q);
  }
  double HH(double t) const {
    auto hh = h;
    return integrate_oriented([&](double s) { return (t - s) * hh(s); }, t0, t, {}, q);
  }
};

}  // namespace

ScalarField alt_solve_c31(const IvpProblem& p, const IvpOptions& opt) {
  check_ivp(p);
  if (classify_ivp(p.a, p.b).kind != Case::C3_1) fail(ErrorKind::WrongCase, "alt_solve_c31 needs a = b");
  const double a = p.a;
  if (std::fabs(2.0 * a * p.t0 - 1.0) < 1e-12) fail(ErrorKind::NoUniqueSolution, "t0 = 1/(2a): no unique solution");
  Antiderivatives F{p.h, p.t0, opt.quad};
  auto HHo = [F](double t) { return 0.5 * (F.HH(t) - F.HH(-t)); };
  const double lambda = (p.c + 2.0 * a * HHo(p.t0)) / (2.0 * a * p.t0 - 1.0);
  return ScalarField([=](double t) { return F.H(t) - 2.0 * a * HHo(t) + lambda * (2.0 * a * t - 1.0); },
                     p.h.domain());
}

ScalarField alt_solve_c32(const IvpProblem& p, const IvpOptions& opt) {
  check_ivp(p);
  if (classify_ivp(p.a, p.b).kind != Case::C3_2) fail(ErrorKind::WrongCase, "alt_solve_c32 needs a = -b");
  const double a = p.a;
  Antiderivatives F{p.h, 0.0, opt.quad};
  auto HHe = [F](double t) { return 0.5 * (F.HH(t) + F.HH(-t)); };
  const double H0 = F.H(p.t0), HHe0 = HHe(p.t0), c = p.c;
  return ScalarField([=](double t) { return F.H(t) - H0 + 2.0 * a * (HHe(t) - HHe0) + c; }, p.h.domain());
}

// ---------------------------------------------------------------------------

const char* to_string(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Changes: return "changes sign";
    case Sign::Unknown: return "unknown";
  }
  return "?";
}

double eta(double a, double b) {
  if (!(a * a > b * b)) fail(ErrorKind::WrongCase, "eta needs a^2 > b^2");
  double w = omega_of(a, b);
  if (b > 0.0) return std::atan(w / b) / w;
  if (b == 0.0) return pi / (2.0 * std::fabs(a));
  return (std::atan(w / b) + pi) / w;
}

double sigma_ivp(double a, double b) {
  if (!(b * b > a * a)) fail(ErrorKind::WrongCase, "sigma needs b^2 > a^2");
  double m = std::sqrt(b * b - a * a);
  return std::atanh(m / b) / m;
}

SignReport sign_classify_ivp(double a, double b) {
  SignReport rep;
  rep.tag = classify_ivp(a, b);
  const double inf = std::numeric_limits<double>::infinity();
  const Sign pos = Sign::Positive, neg = Sign::Negative;
  const Sign sa = a > 0.0 ? pos : neg;
  auto region = [&](const char* name, Sign s, double lo, double hi) { rep.regions.push_back({name, s, lo, hi}); };

  switch (rep.tag.kind) {
    case Case::C1: {
      double w = omega_of(a, b);
      double ep = eta(a, b), em = eta(a, -b);
      region("0<s<t", pos, 0.0, ep);
      region("t<s<0", neg, -em, 0.0);
      region("-t<s<0", sa, 0.0, pi / w);
      region("0<s<-t", sa, -pi / w, 0.0);
      if (a > 0.0)
        rep.bands.push_back({pos, 0.0, ep});
      else
        rep.bands.push_back({neg, -em, 0.0});
      rep.note = "every other band changes sign";
      break;
    }
    case Case::C2: {
      double sg = sigma_ivp(a, b);
      region("-t<s<0", sa, 0.0, inf);
      region("0<s<-t", sa, -inf, 0.0);
      if (b > 0.0) {
        region("0<s<t", pos, 0.0, sg);
        region("t<s<0", neg, -inf, 0.0);
      } else {
        region("0<s<t", pos, 0.0, inf);
        region("t<s<0", neg, sg, 0.0);
      }
      if (a > 0.0 && b > a)
        rep.bands.push_back({pos, 0.0, sg});
      else if (b < -a && a > 0.0)
        rep.bands.push_back({pos, 0.0, inf});
      else if (a < 0.0 && b < a)
        rep.bands.push_back({neg, sg, 0.0});
      else if (a < 0.0 && b > -a)
        rep.bands.push_back({neg, -inf, 0.0});
      break;
    }
    case Case::C3_1: {
      double th = 1.0 / a;
      region("-t<s<0", sa, 0.0, inf);
      region("0<s<-t", sa, -inf, 0.0);
      if (a > 0.0) {
        region("0<s<t", pos, 0.0, th);
        region("t<s<0", neg, -inf, 0.0);
        rep.bands.push_back({pos, 0.0, th});
      } else {
        region("0<s<t", pos, 0.0, inf);
        region("t<s<0", neg, th, 0.0);
        rep.bands.push_back({neg, th, 0.0});
      }
      break;
    }
    case Case::C3_2:
      if (a > 0.0) {
        rep.bands.push_back({pos, 0.0, inf});
        rep.note = "for h >= 0 the solution with u(0) = 0 is non-negative on [0, inf)";
      } else {
        rep.bands.push_back({neg, -inf, 0.0});
        rep.note = "for h >= 0 the solution with u(0) = 0 is non-positive on (-inf, 0]";
      }
      break;
    default: break;
  }
  return rep;
}

}  // namespace involute
