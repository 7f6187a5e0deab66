#include <algorithm>
#include <cmath>
#include <limits>

#include "bvp_internal.hpp"
#include "involute/error.hpp"

namespace involute {

double sigma_threshold(double k) {
  if (!(k > -1.0)) fail(ErrorKind::Domain, "sigma(k) is defined for k > -1");
  if (std::fabs(k - 1.0) < 1e-6) return 0.5 + (1.0 - k) / 6.0;  // both branches share this expansion
  if (k < 1.0) return std::acos(k) / (2.0 * std::sqrt(1.0 - k * k));
  double m = std::sqrt(k * k - 1.0);
  return -std::log(k - m) / (2.0 * m);
}

const char* to_string(PhasorBranch b) {
  switch (b) {
    case PhasorBranch::CoshPlus: return "cosh+";
    case PhasorBranch::CoshMinus: return "cosh-";
    case PhasorBranch::SinhPlus: return "sinh+";
    case PhasorBranch::SinhMinus: return "sinh-";
    case PhasorBranch::ExpPlus: return "exp+";
    case PhasorBranch::ExpMinus: return "exp-";
  }
  return "?";
}

double Phasor::operator()(double g) const {
  switch (branch) {
    case PhasorBranch::CoshPlus: return amplitude * std::cosh(g + shift);
    case PhasorBranch::CoshMinus: return -amplitude * std::cosh(g + shift);
    case PhasorBranch::SinhPlus: return amplitude * std::sinh(g + shift);
    case PhasorBranch::SinhMinus: return -amplitude * std::sinh(g + shift);
    case PhasorBranch::ExpPlus: return amplitude * std::exp(g);
    case PhasorBranch::ExpMinus: return amplitude * std::exp(-g);
  }
  return 0.0;
}

Phasor hyperbolic_phasor(double alpha, double beta) {
  double scale = std::max(std::fabs(alpha), std::fabs(beta));
  if (std::fabs(alpha - beta) <= 1e-14 * scale) return {PhasorBranch::ExpPlus, alpha, 0.0};
  if (std::fabs(alpha + beta) <= 1e-14 * scale) return {PhasorBranch::ExpMinus, alpha, 0.0};
  double amp = std::sqrt(std::fabs(alpha * alpha - beta * beta));
  double shift = 0.5 * std::log(std::fabs((alpha + beta) / (alpha - beta)));
  if (alpha > std::fabs(beta)) return {PhasorBranch::CoshPlus, amp, shift};
  if (-alpha > std::fabs(beta)) return {PhasorBranch::CoshMinus, amp, shift};
  if (beta > std::fabs(alpha)) return {PhasorBranch::SinhPlus, amp, shift};
  return {PhasorBranch::SinhMinus, amp, shift};
}

KernelSample sample_kernel(const GreenKernel& K, double T, int n) {
  KernelSample out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  const double h = 2.0 * T / n;
  for (int i = 0; i < n; ++i) {
    auto row = K.row(-T + (i + 0.5) * h);
    for (int j = 0; j < n; ++j) {
      double g = row(-T + (j + 0.25) * h);
      out.min = std::min(out.min, g);
      out.max = std::max(out.max, g);
    }
  }
  return out;
}

SignVerdict constant_sign_check(const BvpProblem& p0) {
  BvpProblem p = detail::restricted(p0);
  CaseTag tag = classify_bvp(p.a, p.b);
  if (tag.kind != Case::C1p && tag.kind != Case::C2p && tag.kind != Case::C3p)
    fail(ErrorKind::WrongCase, std::string("sign theory covers C1', C2', C3'; got ") + case_name(tag.kind));
  const double k = *tag.k;

  SignVerdict v;
  // sign of a on a fine grid
  double amin = std::numeric_limits<double>::infinity(), amax = -amin;
  for (int i = 0; i <= 1024; ++i) {
    double x = p.a(-p.T + 2.0 * p.T * i / 1024);
    amin = std::min(amin, x);
    amax = std::max(amax, x);
  }
  Primitives P = primitives(p.a, p.b, p.T);
  v.abs_AT = std::fabs(P.A(p.T));

  const double inf = std::numeric_limits<double>::infinity();
  switch (tag.kind) {
    case Case::C1p: v.threshold = sigma_threshold(k); break;
    case Case::C3p: v.threshold = 0.5; break;
    default: {
      // zero-freeness of cosh(mA) - ((1+k)/m) sinh(mA): a cosh branch never vanishes,
      // a sinh branch vanishes at A = -shift/m.
      double m = std::sqrt(k * k - 1.0);
      Phasor ph = hyperbolic_phasor(1.0, -(1.0 + k) / m);
      bool never_zero = ph.branch == PhasorBranch::CoshPlus || ph.branch == PhasorBranch::CoshMinus;
      v.threshold = never_zero ? inf : std::fabs(ph.shift) / m;
    }
  }

  GreenKernel G = green_bvp_nonconstant(p);
  KernelSample s = sample_kernel(G, p.T);
  v.sampled_min = s.min;
  v.sampled_max = s.max;

  if (amin < 0.0 && amax > 0.0) {
    v.reason = "a changes sign";
  } else if (amax <= 0.0 && amin >= 0.0) {
    v.reason = "a vanishes";
  } else if (!(v.abs_AT < v.threshold)) {
    v.reason = "|A(T)| is not below the threshold";
  } else {
    bool apos = amax > 0.0;
    bool positive = tag.kind == Case::C2p ? (apos == (k > 0.0)) : apos;
    v.sign = positive ? Sign::Positive : Sign::Negative;
    v.reason = "|A(T)| below the threshold";
    double slack = 1e-12 * std::max(std::fabs(s.min), std::fabs(s.max));
    v.consistent = positive ? s.min > -slack : s.max < slack;
  }
  return v;
}

}  // namespace involute
