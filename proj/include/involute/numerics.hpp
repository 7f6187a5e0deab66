#pragma once

#include <functional>
#include <span>
#include <vector>

#include "involute/core.hpp"

namespace involute {

// Symmetric sample set plus the central-difference step used for residuals.
struct Grid {
  std::vector<double> nodes;  // sorted, symmetric about 0
  double step = 1e-4;

  // n uniform nodes on [-R, R] (n odd keeps 0 as a node).
  static Grid uniform(double R, int n, double step = 1e-4);
  double radius() const { return nodes.empty() ? 0.0 : nodes.back(); }
};

struct QuadOptions {
  double rtol = 1e-9;
  double atol = 0.0;
  int max_depth = 40;
};

// Adaptive Simpson over [lo, hi] (lo <= hi), split at the given breakpoints.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 std::span<const double> breakpoints = {}, const QuadOptions& opt = {});

// Oriented integral: -integrate(f, b, a) when b < a.
double integrate_oriented(const std::function<double(double)>& f, double a, double b,
                          std::span<const double> breakpoints = {}, const QuadOptions& opt = {});

// F(t) = integral of f from `anchor` to t, tabulated on `domain` and evaluated
// by cubic Hermite interpolation using f itself as the node derivative.
class Primitive {
 public:
  Primitive() = default;
  Primitive(const std::function<double(double)>& f, Interval domain, double anchor = 0.0, int panels = 2048,
            double rtol = 1e-12);

  double operator()(double t) const;
  ScalarField field() const;
  const Interval& domain() const { return domain_; }

 private:
  struct Table {
    double lo = 0, h = 1;
    std::vector<double> value, slope;
  };
  std::shared_ptr<const Table> table_;
  Interval domain_;
};

// Dense output on uniform nodes from values and derivatives (cubic Hermite).
class HermiteTable {
 public:
  HermiteTable(double lo, double hi, std::vector<double> value, std::vector<double> slope);
  double operator()(double t) const;

 private:
  double lo_, h_;
  std::vector<double> value_, slope_;
};

struct ResidualReport {
  double max_abs = 0.0;  // max |u' + a u(-t) + b u - h|
  double max_rel = 0.0;  // same, divided by (1 + |h(t)|)
  double worst_t = 0.0;
  int checked = 0;
};

// Central-difference residual of u' + a(t)u(-t) + b(t)u(t) = h(t) on interior grid nodes.
// Nodes closer than `margin` to the domain ends or to any point of `exclude` are skipped.
ResidualReport residual_check(const ScalarField& u, const ScalarField& a, const ScalarField& b,
                              const ScalarField& h, const Grid& grid, std::span<const double> exclude = {},
                              double margin = 1e-3);

// RK4 on the even/odd system of the constant-coefficient IVP, marched over the
// grid's non-negative nodes and rescaled with the homogeneous solution to meet x(t0) = c.
ScalarField oracle_ivp(const IvpProblem& p, const Grid& grid);

struct ShootingOptions {
  int steps = 4000;
};

// Periodic solution by shooting on xi = x_e(0) with x_o(0) = 0, targeting x_o(T) = 0.
ScalarField oracle_bvp_shooting(const BvpProblem& p, const ShootingOptions& opt = {});

}  // namespace involute
