#include "involute/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "involute/error.hpp"

namespace involute {

bool Interval::symmetric(double tol) const {
  double scale = std::max({1.0, std::fabs(lo), std::fabs(hi)});
  return std::fabs(lo + hi) <= tol * scale;
}

ScalarField::ScalarField(Fn fn, Interval domain)
    : fn_(std::make_shared<const Fn>(std::move(fn))), domain_(domain) {}

ScalarField ScalarField::constant(double c, Interval domain) {
  return ScalarField(std::make_shared<const Fn>([c](double) { return c; }), domain, c);
}

ScalarField ScalarField::from_expr(Expr e, Interval domain) {
  if (!e.depends_on_t()) return constant(e.eval(0.0), domain);
  auto shared = std::make_shared<const Expr>(std::move(e));
  return ScalarField([shared](double t) { return shared->eval(t); }, domain);
}

ScalarField ScalarField::from_text(std::string_view src, Interval domain) {
  return from_expr(Expr::parse(src), domain);
}

double ScalarField::at(double t) const {
  double slack = 1e-12 * std::max(1.0, std::max(std::fabs(domain_.lo), std::fabs(domain_.hi)));
  if (!(t >= domain_.lo - slack && t <= domain_.hi + slack)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "evaluation at %.17g outside [%.17g, %.17g]", t, domain_.lo, domain_.hi);
    fail(ErrorKind::Domain, buf);
  }
  return (*this)(t);
}

ParityPair parity_split(const ScalarField& f) {
  if (!f.domain().symmetric()) fail(ErrorKind::Domain, "parity split needs a domain symmetric about 0");
  if (auto c = f.constant_value())
    return {ScalarField::constant(*c, f.domain()), ScalarField::constant(0.0, f.domain())};
  ScalarField g = f;
  return {ScalarField([g](double t) { return 0.5 * (g(t) + g(-t)); }, f.domain()),
          ScalarField([g](double t) { return 0.5 * (g(t) - g(-t)); }, f.domain())};
}

double oriented_indicator(double a, double b, double t) {
  if (a <= b) return (t >= a && t <= b) ? 1.0 : 0.0;
  return (t >= b && t <= a) ? -1.0 : 0.0;
}

const char* case_name(Case c) {
  switch (c) {
    case Case::C1: return "C1";
    case Case::C2: return "C2";
    case Case::C3_1: return "C3.1";
    case Case::C3_2: return "C3.2";
    case Case::C1p: return "C1'";
    case Case::C2p: return "C2'";
    case Case::C3p: return "C3'";
    case Case::C4p: return "C4'";
    case Case::C5p: return "C5'";
    case Case::Mixed: return "Mixed";
  }
  return "?";
}

std::string to_string(const CaseTag& tag) {
  std::string s = case_name(tag.kind);
  if (tag.k) {
    char buf[48];
    std::snprintf(buf, sizeof buf, ", k=%.6g", *tag.k);
    s += buf;
  }
  return s;
}

CaseTag classify_ivp(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) fail(ErrorKind::Domain, "coefficients must be finite");
  if (a == 0.0) fail(ErrorKind::Unsupported, "a = 0: the equation has no reflection term");
  double d = a * a - b * b;
  double scale = std::max(a * a, b * b);
  if (std::fabs(d) <= 1e-12 * scale) return {(a * b > 0.0) ? Case::C3_1 : Case::C3_2, std::nullopt};
  return {d > 0.0 ? Case::C1 : Case::C2, std::nullopt};
}

CaseTag classify_bvp(const ScalarField& a, const ScalarField& b, double tol) {
  const Interval& dom = a.domain();
  if (!dom.symmetric() || !std::isfinite(dom.hi) || dom.hi <= 0.0)
    fail(ErrorKind::Domain, "classification needs a bounded domain symmetric about 0");
  const double T = dom.hi;
  constexpr int kSamples = 257;

  std::vector<double> ae, ao, be, bo, av;
  ae.reserve(kSamples);
  double amax = 0.0, bmax = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    double t = -T + 2.0 * T * i / (kSamples - 1);
    double ap = a(t), am = a(-t), bp = b(t), bm = b(-t);
    ae.push_back(0.5 * (ap + am));
    ao.push_back(0.5 * (ap - am));
    be.push_back(0.5 * (bp + bm));
    bo.push_back(0.5 * (bp - bm));
    av.push_back(ap);
    amax = std::max(amax, std::fabs(ap));
    bmax = std::max(bmax, std::fabs(bp));
  }
  if (amax == 0.0) fail(ErrorKind::Unsupported, "a vanishes identically: no reflection term");

  const double scale = std::max(amax, bmax);
  auto all_small = [&](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return std::fabs(x) <= tol * scale; });
  };

  if (all_small(ae) && all_small(be)) return {Case::C5p, std::nullopt};
  if (!all_small(ao)) return {Case::Mixed, std::nullopt};

  // a is even; look for b_e = k a.
  std::vector<double> ratios;
  for (int i = 0; i < kSamples; ++i)
    if (std::fabs(av[i]) > tol * amax) ratios.push_back(be[i] / av[i]);
  std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2, ratios.end());
  const double k = ratios[ratios.size() / 2];
  for (int i = 0; i < kSamples; ++i)
    if (std::fabs(be[i] - k * av[i]) > tol * scale) return {Case::Mixed, std::nullopt};

  const double ktol = tol * std::max(1.0, bmax / amax);
  if (std::fabs(k - 1.0) <= ktol) return {Case::C3p, 1.0};
  if (std::fabs(k + 1.0) <= ktol) return {Case::C4p, -1.0};
  if (std::fabs(k) < 1.0) return {Case::C1p, k};
  return {Case::C2p, k};
}

GreenKernel::GreenKernel(Fn fn, Interval t_domain, Interval s_domain, double jump, JumpKind kind,
                         std::string support, BreakFn breaks, RowFn row)
    : fn_(std::make_shared<const Fn>(std::move(fn))),
      t_domain_(t_domain),
      s_domain_(s_domain),
      jump_(jump),
      kind_(kind),
      support_(std::move(support)),
      breaks_(std::move(breaks)),
      row_(std::move(row)) {}

std::function<double(double)> GreenKernel::row(double t) const {
  if (row_) return row_(t);
  auto fn = fn_;
  return [fn, t](double s) { return (*fn)(t, s); };
}

}  // namespace involute
