#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bvp_internal.hpp"
#include "involute/error.hpp"

namespace involute {

namespace {

struct Norms {
  double l1 = 0, l2 = 0, linf = 0;
};

Norms norms(const ScalarField& f, double T) {
  Norms n;
  n.l1 = integrate([&](double t) { return std::fabs(f(t)); }, -T, T);
  n.l2 = std::sqrt(integrate([&](double t) { return f(t) * f(t); }, -T, T));
  for (int i = 0; i <= 4096; ++i) n.linf = std::max(n.linf, std::fabs(f(-T + 2.0 * T * i / 4096)));
  return n;
}

// Cumulative integral from the first node on a uniform grid, fourth order
// (each cell integrates the cubic through its four nearest nodes).
void cumulative(const std::vector<double>& f, double h, std::vector<double>& out) {
  const std::size_t n = f.size();
  out.assign(n, 0.0);
  const double c = h / 24.0;
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double cell;
    if (j == 0)
      cell = c * (9 * f[0] + 19 * f[1] - 5 * f[2] + f[3]);
    else if (j + 2 == n)
      cell = c * (f[n - 4] - 5 * f[n - 3] + 19 * f[n - 2] + 9 * f[n - 1]);
    else
      cell = c * (-f[j - 1] + 13 * f[j] + 13 * f[j + 1] - f[j + 2]);
    out[j + 1] = out[j] + cell;
  }
}

// Fixed-point map of the mixed problem on one uniform grid.
struct PicardGrid {
  int n;
  double T, h, tau;
  std::vector<double> t, a, b, hv, eV, emV, hsym;
  std::vector<double> work, cum;

  PicardGrid(const BvpProblem& p, const ScalarField& V, int n_) : n(n_), T(p.T) {
    h = 2.0 * T / (n - 1);
    t.resize(n);
    a.resize(n);
    b.resize(n);
    hv.resize(n);
    eV.resize(n);
    emV.resize(n);
    for (int i = 0; i < n; ++i) {
      t[i] = T * (2 * i - (n - 1)) / double(n - 1);
      a[i] = p.a(t[i]);
      b[i] = p.b(t[i]);
      hv[i] = p.h(t[i]);
      double v = V(t[i]);
      eV[i] = std::exp(v);
      emV[i] = std::exp(-v);
    }
    tau = 1.0 / (1.0 - std::exp(-(V(T) - V(-T))));
    // a(s) int_{-s}^{s} h + h(s) does not depend on the iterate
    std::vector<double> H;
    cumulative(hv, h, H);
    hsym.resize(n);
    for (int i = 0; i < n; ++i) hsym[i] = a[i] * (H[i] - H[n - 1 - i]) + hv[i];
  }

  void apply(const std::vector<double>& x, std::vector<double>& out) {
    work.resize(n);
    for (int i = 0; i < n; ++i) work[i] = a[i] * x[n - 1 - i] + b[i] * x[i];
    cumulative(work, h, cum);  // int_{-T}^{t} (a x(-r) + b x(r)) dr
    for (int i = 0; i < n; ++i) work[i] = eV[i] * (a[i] * (cum[n - 1 - i] - cum[i]) + hsym[i]);
    cumulative(work, h, cum);  // int_{-T}^{t} e^{V} f
    const double tail = (tau - 1.0) * cum[n - 1];
    out.resize(n);
    for (int i = 0; i < n; ++i) out[i] = emV[i] * (cum[i] + tail);
  }

  // Iterate from x; returns the number of iterations.
  int solve(std::vector<double>& x, double tol, int max_iter) {
    std::vector<double> next;
    for (int it = 1; it <= max_iter; ++it) {
      apply(x, next);
      double diff = 0.0;
      for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(next[i] - x[i]));
      x.swap(next);
      if (!std::isfinite(diff)) fail(ErrorKind::Convergence, "Picard iteration diverged");
      if (diff <= tol) return it;
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "Picard iteration did not converge in %d iterations", max_iter);
    fail(ErrorKind::Convergence, buf);
  }

  ScalarField dense(const std::vector<double>& x) const {
    std::vector<double> slope(n);
    for (int i = 0; i < n; ++i) slope[i] = hv[i] - a[i] * x[n - 1 - i] - b[i] * x[i];
    HermiteTable tab(-T, T, x, std::move(slope));
    return ScalarField([tab](double s) { return tab(s); }, {-T, T});
  }
};

}  // namespace

double contraction_constant(const BvpProblem& p0) {
  BvpProblem p = detail::restricted(p0);
  ScalarField a = p.a, b = p.b;
  ScalarField v([a, b](double t) { return a(t) + b(t); }, {-p.T, p.T});
  double F = bound_F(v, p.T);
  Norms na = norms(a, p.T), nb = norms(b, p.T);
  double twoT = 2.0 * p.T;
  double m = std::min({twoT * (na.linf + nb.linf), std::sqrt(twoT) * (na.l2 + nb.l2), na.l1 + nb.l1});
  return F * na.l1 * m;
}

PicardResult solve_mixed_picard(const BvpProblem& p0, const PicardOptions& opt) {
  BvpProblem p = detail::restricted(p0);
  if (opt.grid < 5 || opt.grid % 2 == 0) fail(ErrorKind::Domain, "Picard grid must be odd and at least 5");
  PicardResult res;
  res.contraction = contraction_constant(p);
  if (!(res.contraction < 1.0) && !opt.force) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "contraction constant %.6g >= 1: convergence not guaranteed (force to iterate anyway)",
                  res.contraction);
    fail(ErrorKind::NotGuaranteed, buf);
  }

  ScalarField a = p.a, b = p.b;
  Interval d{-p.T, p.T};
  ScalarField V = Primitive([a, b](double t) { return a(t) + b(t); }, d).field();

  int n = opt.grid;
  PicardGrid g(p, V, n);
  std::vector<double> x(n, 0.0);
  if (opt.initial)
    for (int i = 0; i < n; ++i) x[i] = (*opt.initial)(g.t[i]);
  res.iterations = g.solve(x, opt.tol, opt.max_iter);

  // double the grid until two successive solutions agree on the shared nodes
  while (true) {
    int m = 2 * n - 1;
    if (m > opt.max_grid) break;
    PicardGrid fine(p, V, m);
    std::vector<double> y(m);
    ScalarField coarse = g.dense(x);
    for (int i = 0; i < m; ++i) y[i] = coarse(fine.t[i]);
    fine.solve(y, opt.tol, opt.max_iter);
    double diff = 0.0;
    for (int i = 0; i < n; ++i) diff = std::max(diff, std::fabs(y[2 * i] - x[i]));
    g = std::move(fine);
    x = std::move(y);
    n = m;
    if (diff <= opt.refine_tol) break;
  }
  res.grid_points = n;
  res.u = g.dense(x);
  return res;
}

BvpSolution solve_periodic(const BvpProblem& p0, const PicardOptions& picard, const BvpOptions& opt) {
  BvpProblem p = detail::restricted(p0);
  BvpSolution out;
  out.tag = classify_bvp(p.a, p.b);
  switch (out.tag.kind) {
    case Case::C1p:
    case Case::C2p:
    case Case::C3p:
      out.u = solve_bvp(p, opt);
      out.method = "kernel";
      break;
    case Case::C4p:
    case Case::C5p: {
      auto fam = out.tag.kind == Case::C4p ? solve_resonant_c4(p) : solve_resonant_c5(p);
      if (!fam.solvable) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "resonant case %s: obstruction %.6g is not zero, no periodic solution",
                      case_name(out.tag.kind), fam.obstruction);
        fail(ErrorKind::Resonant, buf);
      }
      out.u = fam.member(0.0);
      out.method = "resonant family, c = 0";
      out.family = std::move(fam);
      break;
    }
    default: {
      auto r = solve_mixed_picard(p, picard);
      out.u = r.u;
      out.iterations = r.iterations;
      out.contraction = r.contraction;
      out.method = "picard";
    }
  }
  return out;
}

}  // namespace involute
