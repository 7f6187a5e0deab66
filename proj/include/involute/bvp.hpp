#pragma once

#include <functional>
#include <optional>
#include <string>

#include "involute/core.hpp"
#include "involute/ivp.hpp"
#include "involute/numerics.hpp"

namespace involute {

// Periodic problem  x'(t) + a(t) x(-t) + b(t) x(t) = h(t),  x(-T) = x(T).

// Classify with the coefficients restricted to [-T, T].
CaseTag classify_bvp(const BvpProblem& p, double tol = 1e-9);

// x'' + mu x = h with periodic value and slope on [-T, T].  Derivative-jump kernel.
GreenKernel harmonic_periodic_green(double mu, double T);

// Constant coefficients, a^2 != b^2.
GreenKernel green_bvp_constant(double a, double b, double T);

// Constant coefficients with a = b.
GreenKernel green_bvp_c3(double a, double T);

struct Primitives {
  ScalarField A;    // int_0^t a
  ScalarField B;    // int_0^t b
  ScalarField B_e;  // even part of B = int_0^t b_o
};

Primitives primitives(const ScalarField& a, const ScalarField& b, double T);

// Particular homogeneous solution for the reducible cases.
ScalarField homogeneous_bvp_solution(const CaseTag& tag, const ScalarField& a, const ScalarField& b, double T);

GreenKernel green_bvp_nonconstant(const BvpProblem& p);

struct BvpOptions {
  QuadOptions quad{1e-10};
};

// u(t) = int K(t,s) h(s) ds over the kernel's s-domain, split at the kernel's breakpoints.
ScalarField solve_with_kernel(const GreenKernel& K, const ScalarField& h, Interval domain, const QuadOptions& q);

ScalarField solve_bvp(const BvpProblem& p, const BvpOptions& opt = {});

double sigma_threshold(double k);

enum class PhasorBranch { CoshPlus, CoshMinus, SinhPlus, SinhMinus, ExpPlus, ExpMinus };
const char* to_string(PhasorBranch b);

// alpha cosh(g) + beta sinh(g) written as one signed cosh / sinh / exp.
struct Phasor {
  PhasorBranch branch;
  double amplitude;
  double shift;
  double operator()(double gamma) const;
};

Phasor hyperbolic_phasor(double alpha, double beta);

struct SignVerdict {
  Sign sign = Sign::Unknown;   // Positive / Negative when constant sign is guaranteed
  double threshold = 0.0;      // bound on |A(T)| (infinity when unconditional)
  double abs_AT = 0.0;
  double sampled_min = 0.0, sampled_max = 0.0;
  bool consistent = true;      // grid sampling does not contradict the verdict
  std::string reason;
};

SignVerdict constant_sign_check(const BvpProblem& p);

struct KernelSample {
  double min = 0.0, max = 0.0;
};
// Sample K on an n x n grid over [-T, T]^2 with staggered t and s nodes (never on the diagonal).
KernelSample sample_kernel(const GreenKernel& K, double T, int n = 101);

struct SolutionFamily {
  std::function<ScalarField(double)> member;  // u_c; meets the boundary condition only when solvable
  bool solvable = false;
  double obstruction = 0.0;
  double tolerance = 0.0;
};

SolutionFamily solve_resonant_c4(const BvpProblem& p);
SolutionFamily solve_resonant_c5(const BvpProblem& p);

// x' + v x = h periodic on [-T, T].
GreenKernel green_ode_periodic(const ScalarField& v, double T);
double bound_F(const ScalarField& v, double T);

// F(v) ||a||_1 min_p (2T)^{1/p} (||a||_{p*} + ||b||_{p*}),  p in {1, 2, inf},  v = a + b.
double contraction_constant(const BvpProblem& p);

struct PicardOptions {
  double tol = 1e-10;        // sup-norm change between iterates
  int max_iter = 500;
  int grid = 513;            // odd, so 0 is a node
  double refine_tol = 1e-8;  // successive grid doublings must agree to this
  int max_grid = 8193;
  bool force = false;        // iterate even when the contraction constant is >= 1
  std::optional<ScalarField> initial;
};

struct PicardResult {
  ScalarField u;
  int iterations = 0;        // on the base grid
  int grid_points = 0;       // finest grid used
  double contraction = 0.0;
};

PicardResult solve_mixed_picard(const BvpProblem& p, const PicardOptions& opt = {});

// Dispatch on the case tag: kernel solve, resonant family member c = 0, or Picard.
struct BvpSolution {
  ScalarField u;
  CaseTag tag;
  std::string method;
  std::optional<SolutionFamily> family;
  int iterations = 0;
  double contraction = 0.0;
};

BvpSolution solve_periodic(const BvpProblem& p, const PicardOptions& picard = {}, const BvpOptions& opt = {});

}  // namespace involute
