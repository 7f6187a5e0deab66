#pragma once

// Shared pieces of the periodic-problem kernels.

#include <cmath>

#include "involute/bvp.hpp"

namespace involute::detail {

// The four wedges cut out by the diagonals s = t and s = -t.
enum class Region { K1, K2, K3, K4 };  // t>|s|, s>|t|, -t>|s|, -s>|t|

// On the diagonal s = t the row is read from the s -> t- side.
inline Region region_of(double t, double s) {
  if (s <= t) return s >= -t ? Region::K1 : Region::K4;
  return s > -t ? Region::K2 : Region::K3;
}

// Closed-form reflection kernel for x' + a x(-t) + b x = h, periodic with signed half-length L.
// Valid for either sign of L, which lets it serve as the inner kernel of G1 when A(T) < 0.
struct ReflectionKernel {
  enum class Kind { Trig, Hyp, Linear };
  Kind kind = Kind::Trig;
  double a = 0, b = 0, L = 1, w = 1, den = 1;

  static ReflectionKernel make(double a, double b, double L);

  double g(double r) const {
    return kind == Kind::Trig ? std::cos(w * (r - L)) / den : -std::cosh(w * (r - L)) / den;
  }
  double gp(double r) const {
    return kind == Kind::Trig ? -w * std::sin(w * (r - L)) / den : -w * std::sinh(w * (r - L)) / den;
  }

  double operator()(Region rg, double x, double y) const {
    if (kind == Kind::Linear) {
      double common = (y - x) / (2 * L) - a * x * y / L + 1.0 / (4 * a * L);
      switch (rg) {
        case Region::K1: return common + 0.5 + a * y;
        case Region::K2: return common - 0.5 + a * x;
        case Region::K3: return common - 0.5 - a * y;
        case Region::K4: return common + 0.5 - a * x;
      }
    }
    double s1 = (rg == Region::K1 || rg == Region::K2) ? 1.0 : -1.0;
    double s2 = (rg == Region::K1 || rg == Region::K4) ? 1.0 : -1.0;
    return a * g(s1 * (x + y)) - b * g(s2 * (x - y)) + s2 * gp(s2 * (x - y));
  }
};

inline std::vector<double> reflection_breaks(double t) { return {-std::fabs(t), 0.0, std::fabs(t)}; }

// Coefficients restricted to [-T, T].
BvpProblem restricted(const BvpProblem& p);

}  // namespace involute::detail
