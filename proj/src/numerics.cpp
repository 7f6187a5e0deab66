#include "involute/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "involute/error.hpp"

namespace involute {

Grid Grid::uniform(double R, int n, double step) {
  if (n < 2 || !(R > 0.0)) fail(ErrorKind::Domain, "grid needs n >= 2 nodes and R > 0");
  Grid g;
  g.step = step;
  g.nodes.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // symmetric by construction: node i and n-1-i are exact negatives
    int j = 2 * i - (n - 1);
    g.nodes[static_cast<std::size_t>(i)] = R * j / (n - 1);
  }
  return g;
}

namespace {

struct Simpson {
  const std::function<double(double)>& f;
  int max_depth;
  bool failed = false;

  double recurse(double a, double b, double fa, double fm, double fb, double whole, double eps, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= max_depth || m <= a || m >= b) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return recurse(a, m, fa, flm, fm, left, 0.5 * eps, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * eps, depth + 1);
  }
};

constexpr int kInitialSplit = 8;

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, std::span<const double> breakpoints,
                 const QuadOptions& opt) {
  if (!(lo <= hi)) fail(ErrorKind::Domain, "integrate: lower limit exceeds upper limit");
  if (lo == hi) return 0.0;
  // a handful of ulps wide: nothing left to resolve
  const double span_ulp = std::nextafter(std::max(std::fabs(lo), std::fabs(hi)), INFINITY) -
                          std::max(std::fabs(lo), std::fabs(hi));
  if (hi - lo <= 64.0 * span_ulp) return (hi - lo) * f(0.5 * (lo + hi));

  std::vector<double> cuts{lo};
  for (double x : breakpoints)
    if (x > lo && x < hi) cuts.push_back(x);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  // Each panel is cut into kInitialSplit pieces; endpoints are read one ulp inside
  // the panel so a jump placed exactly on a breakpoint is seen from the correct side.
  struct Piece {
    double a, b, fa, fm, fb, whole;
  };
  std::vector<Piece> pieces;
  double scale = 0.0;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    double a = cuts[p], b = cuts[p + 1];
    double w = (b - a) / kInitialSplit;
    for (int k = 0; k < kInitialSplit; ++k) {
      double x0 = a + k * w, x1 = (k == kInitialSplit - 1) ? b : a + (k + 1) * w;
      double fa = f(k == 0 ? std::nextafter(a, b) : x0);
      double fb = f(k == kInitialSplit - 1 ? std::nextafter(b, a) : x1);
      double fm = f(0.5 * (x0 + x1));
      double whole = (x1 - x0) / 6.0 * (fa + 4.0 * fm + fb);
      scale += (x1 - x0) / 6.0 * (std::fabs(fa) + 4.0 * std::fabs(fm) + std::fabs(fb));
      pieces.push_back({x0, x1, fa, fm, fb, whole});
    }
  }
  if (!std::isfinite(scale)) fail(ErrorKind::Quadrature, "integrand is not finite");

  const double eps_total = opt.rtol * scale + opt.atol;
  Simpson s{f, opt.max_depth};
  double sum = 0.0;
  for (const auto& pc : pieces) {
    double eps = eps_total * (pc.b - pc.a) / (hi - lo);
    sum += s.recurse(pc.a, pc.b, pc.fa, pc.fm, pc.fb, pc.whole, eps, 1);
  }
  if (s.failed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "adaptive Simpson exceeded depth %d on [%.6g, %.6g]", opt.max_depth, lo, hi);
    fail(ErrorKind::Quadrature, buf);
  }
  return sum;
}

double integrate_oriented(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints, const QuadOptions& opt) {
  return a <= b ? integrate(f, a, b, breakpoints, opt) : -integrate(f, b, a, breakpoints, opt);
}

// ---------------------------------------------------------------------------

HermiteTable::HermiteTable(double lo, double hi, std::vector<double> value, std::vector<double> slope)
    : lo_(lo), h_((hi - lo) / static_cast<double>(value.size() - 1)), value_(std::move(value)),
      slope_(std::move(slope)) {}

namespace {

double hermite(double lo, double h, const std::vector<double>& v, const std::vector<double>& d, double t) {
  const std::size_t n = v.size() - 1;
  double x = (t - lo) / h;
  std::size_t i = x <= 0.0 ? 0 : std::min(static_cast<std::size_t>(x), n - 1);
  double u = x - static_cast<double>(i);
  double u2 = u * u, u3 = u2 * u;
  double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
  double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  return h00 * v[i] + h10 * h * d[i] + h01 * v[i + 1] + h11 * h * d[i + 1];
}

}  // namespace

double HermiteTable::operator()(double t) const { return hermite(lo_, h_, value_, slope_, t); }

Primitive::Primitive(const std::function<double(double)>& f, Interval domain, double anchor, int panels,
                     double rtol)
    : domain_(domain) {
  if (!std::isfinite(domain.lo) || !std::isfinite(domain.hi) || !(domain.lo < domain.hi))
    fail(ErrorKind::Domain, "primitive needs a bounded, non-degenerate interval");
  if (!domain.contains(anchor)) fail(ErrorKind::Domain, "primitive anchor outside its interval");
  auto tab = std::make_shared<Table>();
  tab->lo = domain.lo;
  tab->h = (domain.hi - domain.lo) / panels;
  tab->value.assign(static_cast<std::size_t>(panels) + 1, 0.0);
  tab->slope.resize(static_cast<std::size_t>(panels) + 1);
  QuadOptions opt;
  opt.rtol = rtol;
  for (int i = 0; i <= panels; ++i) tab->slope[static_cast<std::size_t>(i)] = f(domain.lo + i * tab->h);
  for (int i = 0; i < panels; ++i) {
    double a = domain.lo + i * tab->h;
    double b = (i == panels - 1) ? domain.hi : a + tab->h;
    tab->value[static_cast<std::size_t>(i) + 1] = tab->value[static_cast<std::size_t>(i)] + integrate(f, a, b, {}, opt);
  }
  // shift so that F(anchor) = 0 exactly up to one panel integral
  std::size_t j = std::min(static_cast<std::size_t>((anchor - domain.lo) / tab->h), static_cast<std::size_t>(panels));
  double node = domain.lo + static_cast<double>(j) * tab->h;
  double offset = tab->value[j] + integrate_oriented(f, node, anchor, {}, opt);
  for (auto& v : tab->value) v -= offset;
  table_ = std::move(tab);
}

double Primitive::operator()(double t) const { return hermite(table_->lo, table_->h, table_->value, table_->slope, t); }

ScalarField Primitive::field() const {
  auto self = *this;
  return ScalarField([self](double t) { return self(t); }, domain_);
}

// ---------------------------------------------------------------------------

ResidualReport residual_check(const ScalarField& u, const ScalarField& a, const ScalarField& b, const ScalarField& h,
                              const Grid& grid, std::span<const double> exclude, double margin) {
  ResidualReport rep;
  const Interval& dom = u.domain();
  const double d = grid.step;
  for (double t : grid.nodes) {
    if (t - d < dom.lo + margin || t + d > dom.hi - margin) continue;
    if (std::any_of(exclude.begin(), exclude.end(), [&](double x) { return std::fabs(t - x) < margin; })) continue;
    double du = (u(t + d) - u(t - d)) / (2.0 * d);
    double ht = h(t);
    double r = std::fabs(du + a(t) * u(-t) + b(t) * u(t) - ht);
    double rel = r / (1.0 + std::fabs(ht));
    ++rep.checked;
    if (rel > rep.max_rel) rep.worst_t = t;
    rep.max_abs = std::max(rep.max_abs, r);
    rep.max_rel = std::max(rep.max_rel, rel);
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

// State (x_o, x_e) of the even/odd system x_o' = (a_o-b_o)x_o - (a_e+b_e)x_e + h_e,
// x_e' = (a_e-b_e)x_o - (a_o+b_o)x_e + h_o.
struct ParitySystem {
  std::function<double(double)> a, b, h;
  bool forced = true;

  void rhs(double t, double xo, double xe, double& dxo, double& dxe) const {
    double ap = a(t), am = a(-t), bp = b(t), bm = b(-t);
    double ae = 0.5 * (ap + am), ao = 0.5 * (ap - am);
    double be = 0.5 * (bp + bm), bo = 0.5 * (bp - bm);
    double he = 0.0, ho = 0.0;
    if (forced) {
      double hp = h(t), hm = h(-t);
      he = 0.5 * (hp + hm);
      ho = 0.5 * (hp - hm);
    }
    dxo = (ao - bo) * xo - (ae + be) * xe + he;
    dxe = (ae - be) * xo - (ao + bo) * xe + ho;
  }
};

struct Trajectory {
  std::vector<double> t, xo, xe, dxo, dxe;
};

// Classical RK4 along the given non-negative, increasing nodes starting at 0.
Trajectory march(const ParitySystem& sys, const std::vector<double>& nodes, double xe0) {
  Trajectory tr;
  double xo = 0.0, xe = xe0;
  auto record = [&](double t) {
    double d1, d2;
    sys.rhs(t, xo, xe, d1, d2);
    tr.t.push_back(t);
    tr.xo.push_back(xo);
    tr.xe.push_back(xe);
    tr.dxo.push_back(d1);
    tr.dxe.push_back(d2);
  };
  record(nodes.front());
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    double t = nodes[i - 1], h = nodes[i] - t;
    double k1o, k1e, k2o, k2e, k3o, k3e, k4o, k4e;
    sys.rhs(t, xo, xe, k1o, k1e);
    sys.rhs(t + 0.5 * h, xo + 0.5 * h * k1o, xe + 0.5 * h * k1e, k2o, k2e);
    sys.rhs(t + 0.5 * h, xo + 0.5 * h * k2o, xe + 0.5 * h * k2e, k3o, k3e);
    sys.rhs(t + h, xo + h * k3o, xe + h * k3e, k4o, k4e);
    xo += h / 6.0 * (k1o + 2 * k2o + 2 * k3o + k4o);
    xe += h / 6.0 * (k1e + 2 * k2e + 2 * k3e + k4e);
    record(nodes[i]);
  }
  return tr;
}

// Evaluate x(t) = x_e(|t|) + sign(t) x_o(|t|) by cubic Hermite on the (possibly non-uniform) nodes.
double dense(const Trajectory& tr, double t) {
  double r = std::fabs(t);
  auto it = std::upper_bound(tr.t.begin(), tr.t.end(), r);
  std::size_t i = it == tr.t.begin() ? 0 : static_cast<std::size_t>(it - tr.t.begin()) - 1;
  i = std::min(i, tr.t.size() - 2);
  double h = tr.t[i + 1] - tr.t[i];
  double u = (r - tr.t[i]) / h;
  double u2 = u * u, u3 = u2 * u;
  double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u, h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
  double xo = h00 * tr.xo[i] + h10 * h * tr.dxo[i] + h01 * tr.xo[i + 1] + h11 * h * tr.dxo[i + 1];
  double xe = h00 * tr.xe[i] + h10 * h * tr.dxe[i] + h01 * tr.xe[i + 1] + h11 * h * tr.dxe[i + 1];
  return xe + (t < 0.0 ? -xo : xo);
}

}  // namespace

ScalarField oracle_ivp(const IvpProblem& p, const Grid& grid) {
  std::vector<double> nodes;
  for (double x : grid.nodes)
    if (x >= 0.0) nodes.push_back(x);
  if (nodes.size() < 2 || nodes.front() != 0.0) fail(ErrorKind::Domain, "oracle grid must contain 0 and positive nodes");
  if (std::fabs(p.t0) > nodes.back()) fail(ErrorKind::Domain, "t0 outside the oracle grid");

  const double a = p.a, b = p.b;
  ScalarField h = p.h;
  ParitySystem forced{[a](double) { return a; }, [b](double) { return b; }, [h](double t) { return h(t); }, true};
  ParitySystem homog = forced;
  homog.forced = false;

  auto part = std::make_shared<Trajectory>(march(forced, nodes, 0.0));
  auto hom = std::make_shared<Trajectory>(march(homog, nodes, 1.0));
  double u_t0 = dense(*hom, p.t0);
  if (std::fabs(u_t0) < 1e-12) fail(ErrorKind::NoUniqueSolution, "homogeneous solution vanishes at t0");
  double lambda = (p.c - dense(*part, p.t0)) / u_t0;
  double R = nodes.back();
  return ScalarField([part, hom, lambda](double t) { return dense(*part, t) + lambda * dense(*hom, t); }, {-R, R});
}

ScalarField oracle_bvp_shooting(const BvpProblem& p, const ShootingOptions& opt) {
  if (!(p.T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  std::vector<double> nodes(static_cast<std::size_t>(opt.steps) + 1);
  for (int i = 0; i <= opt.steps; ++i) nodes[static_cast<std::size_t>(i)] = p.T * i / opt.steps;
  nodes.back() = p.T;

  ScalarField a = p.a, b = p.b, h = p.h;
  ParitySystem sys{[a](double t) { return a(t); }, [b](double t) { return b(t); }, [h](double t) { return h(t); }, true};

  // x_o(T; xi) is affine in xi; two shots determine it and a secant step lands on the root.
  double alpha = march(sys, nodes, 0.0).xo.back();
  double beta = march(sys, nodes, 1.0).xo.back() - alpha;
  if (std::fabs(beta) <= 1e-10 * (1.0 + std::fabs(alpha)))
    fail(ErrorKind::CannotShoot, "shooting map is flat in x(0): the problem looks resonant");
  double xi = -alpha / beta;
  auto tr = std::make_shared<Trajectory>(march(sys, nodes, xi));
  return ScalarField([tr](double t) { return dense(*tr, t); }, {-p.T, p.T});
}

}  // namespace involute
