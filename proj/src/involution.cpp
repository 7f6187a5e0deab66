#include "involute/involution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "involute/error.hpp"

namespace involute {

namespace {

std::vector<double> samples(Interval d, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = d.lo + (d.hi - d.lo) * i / (n - 1);
  out.back() = d.hi;
  return out;
}

double span_tol(Interval d) { return 1e-9 * std::max({1.0, std::fabs(d.lo), std::fabs(d.hi)}); }

[[noreturn]] void domain_error(const char* what, double x) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s (at %.10g)", what, x);
  fail(ErrorKind::Domain, buf);
}

}  // namespace

InvolutionCheck verify_involution(const ScalarField& phi, Interval domain, int n) {
  const Interval& fd = phi.domain();
  if (domain.lo < fd.lo || domain.hi > fd.hi) fail(ErrorKind::Domain, "phi is not defined on the whole interval");
  InvolutionCheck r;
  r.maps_into = true;
  const double tol = span_tol(domain);
  for (double t : samples(domain, n)) {
    double y = phi(t);
    if (!(y >= domain.lo - tol && y <= domain.hi + tol)) {
      r.maps_into = false;
      r.max_defect = std::numeric_limits<double>::infinity();
      continue;
    }
    r.max_defect = std::max(r.max_defect, std::fabs(phi(std::clamp(y, domain.lo, domain.hi)) - t));
  }
  r.ok = r.maps_into && r.max_defect <= 1e-9;
  return r;
}

Involution Involution::make(ScalarField phi, ScalarField dphi, Interval domain, std::optional<double> fixed_point) {
  if (!(domain.lo < domain.hi) || !std::isfinite(domain.lo) || !std::isfinite(domain.hi))
    fail(ErrorKind::Domain, "involution domain must be a bounded interval");
  auto chk = verify_involution(phi, domain);
  if (!chk.ok) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "not an involution of the interval (max |phi(phi(t)) - t| = %.3g)", chk.max_defect);
    fail(ErrorKind::Domain, buf);
  }
  auto pts = samples(domain, 101);
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (!(phi(pts[i]) < phi(pts[i - 1]))) domain_error("involution must be strictly decreasing", pts[i]);

  double fp;
  if (fixed_point) {
    fp = *fixed_point;
  } else {
    double lo = domain.lo, hi = domain.hi;  // phi(t) - t decreases from >= 0 to <= 0
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::fabs(lo)); ++it) {
      double m = 0.5 * (lo + hi);
      (phi(m) - m > 0.0 ? lo : hi) = m;
    }
    fp = 0.5 * (lo + hi);
  }
  if (!domain.contains(fp) || std::fabs(phi(fp) - fp) > span_tol(domain)) domain_error("phi(t0) != t0", fp);
  if (std::fabs(dphi(fp) + 1.0) > 1e-6) domain_error("phi'(t0) must equal -1", fp);
  return {phi.with_domain(domain), dphi.with_domain(domain), domain, fp};
}

Involution Involution::reflection(double T) {
  if (!(T > 0.0)) fail(ErrorKind::Domain, "reflection needs T > 0");
  Interval d{-T, T};
  return {ScalarField([](double s) { return -s; }, d), ScalarField::constant(-1.0, d), d, 0.0};
}

namespace {

// Inverse of an increasing g on [lo, hi] by safeguarded Newton.
double invert_increasing(const ScalarField& g, const ScalarField& dg, double lo, double hi, double y) {
  double a = lo, b = hi;
  double x = lo + (hi - lo) * 0.5;
  for (int it = 0; it < 100; ++it) {
    double r = g(x) - y;
    if (r == 0.0) return x;
    (r > 0.0 ? b : a) = x;
    double d = dg(x);
    double nx = x - r / d;
    if (!(nx > a && nx < b)) nx = 0.5 * (a + b);
    if (std::fabs(nx - x) <= 1e-15 * std::max(1.0, std::fabs(x))) return nx;
    x = nx;
  }
  return x;
}

}  // namespace

Correspondence correspondence_map(const Involution& phi, const Involution& psi, std::optional<ScalarField> g_in,
                                  std::optional<ScalarField> dg_in) {
  const double s1 = psi.domain.lo, s0 = psi.fixed_point;
  const double t1 = phi.domain.lo, t0 = phi.fixed_point;
  ScalarField g, dg;
  if (g_in) {
    if (!dg_in) fail(ErrorKind::Domain, "a custom g needs its derivative");
    g = *g_in;
    dg = *dg_in;
  } else {
    double slope = (t0 - t1) / (s0 - s1);
    g = ScalarField([=](double s) { return t1 + (s - s1) * slope; }, {s1, s0});
    dg = ScalarField::constant(slope, {s1, s0});
  }
  if (std::fabs(g(s1) - t1) > span_tol(phi.domain) || std::fabs(g(s0) - t0) > span_tol(phi.domain))
    fail(ErrorKind::Domain, "g must map [sigma1, s0] onto [tau1, t0]");
  for (double s : samples({s1, s0}, 101))
    if (!(dg(s) > 0.0)) domain_error("g must be strictly increasing", s);

  auto P = phi.phi, dP = phi.dphi, Q = psi.phi, dQ = psi.dphi;
  Correspondence c;
  c.from = psi.domain;
  c.to = phi.domain;
  c.f = ScalarField([=](double s) { return s <= s0 ? g(s) : P(g(Q(s))); }, c.from);
  c.df = ScalarField([=](double s) { return s <= s0 ? dg(s) : dP(g(Q(s))) * dg(Q(s)) * dQ(s); }, c.from);
  c.f_inv = ScalarField(
      [=](double t) {
        if (t <= t0) return invert_increasing(g, dg, s1, s0, t);
        return Q(invert_increasing(g, dg, s1, s0, P(t)));
      },
      c.to);
  return c;
}

Correspondence inverse(const Correspondence& f) {
  Correspondence c;
  c.from = f.to;
  c.to = f.from;
  c.f = f.f_inv;
  c.f_inv = f.f;
  auto finv = f.f_inv, df = f.df;
  c.df = ScalarField([=](double t) { return 1.0 / df(finv(t)); }, c.from);
  return c;
}

GeneralProblem change_involution(const GeneralProblem& p, const Involution& psi, const Correspondence& f) {
  const Interval d = psi.domain;
  auto F = f.f, dF = f.df, Q = psi.phi;
  for (double s : samples(d, 201))
    if (std::fabs(dF(s)) <= 1e-12) fail(ErrorKind::Singular, "f' vanishes: the change of variables is singular");
  auto comp = [&](const ScalarField& u) {
    if (auto c = u.constant_value()) return ScalarField::constant(*c, d);
    return ScalarField([u, F](double s) { return u(F(s)); }, d);
  };
  GeneralProblem out;
  out.inv = psi;
  auto pd = p.d, pc = p.c;
  out.d = ScalarField([pd, F, dF](double s) { return pd(F(s)) / dF(s); }, d);
  out.c = pc.constant_value() && *pc.constant_value() == 0.0
              ? ScalarField::constant(0.0, d)
              : ScalarField([pc, F, dF, Q](double s) { return pc(F(s)) / dF(Q(s)); }, d);
  out.b = comp(p.b);
  out.a = comp(p.a);
  out.h = comp(p.h);
  return out;
}

ResidualReport general_residual(const ScalarField& x, const GeneralProblem& p, int n, double step, double margin) {
  ResidualReport rep;
  const Interval dom = p.inv.domain;
  auto P = p.inv.phi;
  for (double t : samples(dom, n)) {
    if (t - step < dom.lo + margin || t + step > dom.hi - margin) continue;
    double pt = P(t);
    if (pt - step < dom.lo || pt + step > dom.hi) continue;
    double dx = (x(t + step) - x(t - step)) / (2 * step);
    double dxp = (x(pt + step) - x(pt - step)) / (2 * step);
    double ht = p.h(t);
    double r = std::fabs(p.d(t) * dx + p.c(t) * dxp + p.b(t) * x(t) + p.a(t) * x(pt) - ht);
    double rel = r / (1.0 + std::fabs(ht));
    ++rep.checked;
    if (rel > rep.max_rel) rep.worst_t = t;
    rep.max_abs = std::max(rep.max_abs, r);
    rep.max_rel = std::max(rep.max_rel, rel);
  }
  return rep;
}

TransportedSolution solve_general(const GeneralProblem& p, const Involution& psi, const Correspondence& f,
                                  const PicardOptions& picard, const BvpOptions& opt) {
  const Interval d = psi.domain;
  if (!d.symmetric()) fail(ErrorKind::Unsupported, "target involution must live on an interval symmetric about 0");
  for (double s : samples(d, 101)) {
    if (std::fabs(psi.phi(s) + s) > span_tol(d)) fail(ErrorKind::Unsupported, "target involution must be s -> -s");
    if (p.c(f.f(s)) != 0.0) fail(ErrorKind::Unsupported, "problems with an x'(phi(t)) term are not solved");
  }
  TransportedSolution out;
  out.reflected = change_involution(p, psi, f);
  const auto& q = out.reflected;
  for (double s : samples(d, 201))
    if (std::fabs(q.d(s)) <= 1e-12) fail(ErrorKind::Singular, "leading coefficient d vanishes");
  auto qa = q.a, qb = q.b, qd = q.d, qh = q.h;
  BvpProblem bp;
  bp.T = d.hi;
  bp.a = ScalarField([qa, qd](double s) { return qa(s) / qd(s); }, d);
  bp.b = qb.constant_value() && *qb.constant_value() == 0.0 ? ScalarField::constant(0.0, d)
                                                              : ScalarField([qb, qd](double s) { return qb(s) / qd(s); }, d);
  bp.h = ScalarField([qh, qd](double s) { return qh(s) / qd(s); }, d);
  out.inner = solve_periodic(bp, picard, opt);
  auto y = out.inner.u, finv = f.f_inv;
  out.x = ScalarField([y, finv](double t) { return y(finv(t)); }, p.inv.domain);
  return out;
}

}  // namespace involute
