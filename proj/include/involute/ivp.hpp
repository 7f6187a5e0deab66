#pragma once

#include <string>
#include <vector>

#include "involute/core.hpp"
#include "involute/numerics.hpp"

namespace involute {

// Constant-coefficient reflection IVP  x'(t) + a x(-t) + b x(t) = h(t),  x(t0) = c.

struct HomogeneousPair {
  ScalarField u;  // solves u' + a u(-t) + b u = 0, u(0) = 1
  ScalarField v;  // solves v' - a v(-t) + b v = 0, v(0) = 1
  CaseTag tag;
  double omega = 0.0;  // sqrt|a^2 - b^2|
};

HomogeneousPair homogeneous_pair(double a, double b);

// True iff the homogeneous solution does not vanish at t0 (tolerance 1e-12 on t0).
bool uniqueness_check(double a, double b, double t0);

// Explicit kernel, closed on the 0<=s<=t / t<=s<=0 side.
GreenKernel green_ivp(double a, double b);
// Same kernel assembled from the homogeneous pair.
GreenKernel green_ivp_assembled(double a, double b);

struct IvpOptions {
  QuadOptions quad{1e-10};
};

ScalarField solve_ivp(const IvpProblem& p, const IvpOptions& opt = {});
// Closed forms that avoid the kernel for the two degenerate cases.
ScalarField alt_solve_c31(const IvpProblem& p, const IvpOptions& opt = {});
ScalarField alt_solve_c32(const IvpProblem& p, const IvpOptions& opt = {});

// Sign of the kernel on one of the four wedges around the diagonals.
enum class Sign { Positive, Negative, Changes, Unknown };
const char* to_string(Sign s);

struct RegionVerdict {
  std::string region;  // "0<s<t", "t<s<0", "-t<s<0", "0<s<-t"
  Sign sign = Sign::Unknown;
  // The verdict holds for t in (t_lo, t_hi); outside, the wedge changes sign.
  double t_lo = 0.0, t_hi = 0.0;
};

struct BandVerdict {
  Sign sign = Sign::Changes;
  double lo = 0.0, hi = 0.0;  // band [lo, hi] on which the kernel keeps this sign
};

struct SignReport {
  CaseTag tag;
  std::vector<RegionVerdict> regions;
  std::vector<BandVerdict> bands;
  std::string note;
};

// First positive zero of the 0<s<t wedge for a^2 > b^2.
double eta(double a, double b);
// Threshold for the hyperbolic case b^2 > a^2 (negative when b < 0).
double sigma_ivp(double a, double b);

SignReport sign_classify_ivp(double a, double b);

}  // namespace involute
