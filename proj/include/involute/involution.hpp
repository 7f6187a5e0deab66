#pragma once

#include <optional>

#include "involute/bvp.hpp"
#include "involute/core.hpp"
#include "involute/numerics.hpp"

namespace involute {

// A continuous decreasing involution phi of [lo, hi] with its derivative and fixed point.
struct Involution {
  ScalarField phi, dphi;
  Interval domain;
  double fixed_point = 0.0;

  // Validates phi(phi(t)) = t, decreasing, phi(fp) = fp, phi'(fp) = -1.
  // The fixed point is located by bisection when not supplied.
  static Involution make(ScalarField phi, ScalarField dphi, Interval domain,
                         std::optional<double> fixed_point = std::nullopt);
  static Involution reflection(double T);
};

struct InvolutionCheck {
  bool ok = false;         // maps_into and max_defect <= 1e-9
  bool maps_into = false;  // phi(domain) within domain
  double max_defect = 0.0; // max |phi(phi(t)) - t| over the grid
};

InvolutionCheck verify_involution(const ScalarField& phi, Interval domain, int n = 101);

// Increasing bijection f: psi-domain -> phi-domain with f o psi = phi o f.
struct Correspondence {
  ScalarField f, df, f_inv;
  Interval from, to;
};

// g maps [sigma1, s0] increasingly onto [tau1, t0]; the affine map when omitted.
Correspondence correspondence_map(const Involution& phi, const Involution& psi,
                                  std::optional<ScalarField> g = std::nullopt,
                                  std::optional<ScalarField> dg = std::nullopt);

// The map in the other direction (phi-domain -> psi-domain).
Correspondence inverse(const Correspondence& f);

// d(t) x'(t) + c(t) x'(phi(t)) + b(t) x(t) + a(t) x(phi(t)) = h(t),  x(lo) = x(hi).
struct GeneralProblem {
  ScalarField a, b, c, d, h;
  Involution inv;
};

GeneralProblem change_involution(const GeneralProblem& p, const Involution& psi, const Correspondence& f);

ResidualReport general_residual(const ScalarField& x, const GeneralProblem& p, int n = 201, double step = 1e-4,
                                double margin = 1e-3);

struct TransportedSolution {
  ScalarField x;          // solution of the original problem
  GeneralProblem reflected;
  BvpSolution inner;      // solution of the reflection problem
};

// Transform to the reflection psi (must be s -> -s on a symmetric interval), solve there, map back.
TransportedSolution solve_general(const GeneralProblem& p, const Involution& psi, const Correspondence& f,
                                  const PicardOptions& picard = {}, const BvpOptions& opt = {});

}  // namespace involute
