#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "involute/expr.hpp"

namespace involute {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t) const { return t >= lo && t <= hi; }
  bool symmetric(double tol = 1e-12) const;
  double half_length() const { return 0.5 * (hi - lo); }
  static Interval all() { return {}; }
};

// A real function on an interval.  operator() is unchecked; at() checks the domain.
class ScalarField {
 public:
  using Fn = std::function<double(double)>;

  ScalarField() = default;
  ScalarField(Fn fn, Interval domain);

  static ScalarField constant(double c, Interval domain = Interval::all());
  static ScalarField from_expr(Expr e, Interval domain = Interval::all());
  static ScalarField from_text(std::string_view src, Interval domain = Interval::all());

  double operator()(double t) const { return (*fn_)(t); }
  double at(double t) const;

  const Interval& domain() const { return domain_; }
  ScalarField with_domain(Interval d) const { return ScalarField(fn_, d, constant_); }
  // Set when the field is known to be constant (literal or t-free expression).
  std::optional<double> constant_value() const { return constant_; }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  ScalarField(std::shared_ptr<const Fn> fn, Interval d, std::optional<double> c)
      : fn_(std::move(fn)), domain_(d), constant_(c) {}

  std::shared_ptr<const Fn> fn_;
  Interval domain_;
  std::optional<double> constant_;
};

struct ParityPair {
  ScalarField even;
  ScalarField odd;
};

// Requires a domain symmetric about 0.
ParityPair parity_split(const ScalarField& f);

// Oriented indicator of [a, b] (a may exceed b): +1 on [a,b], -1 on [b,a], 0 elsewhere.
double oriented_indicator(double a, double b, double t);

enum class Case {
  C1,    // a^2 > b^2, oscillatory
  C2,    // a^2 < b^2, hyperbolic
  C3_1,  // a = b != 0
  C3_2,  // a = -b != 0
  C1p,   // non-constant, |k| < 1
  C2p,   // non-constant, |k| > 1
  C3p,   // k = 1
  C4p,   // k = -1 (resonant)
  C5p,   // a odd, b odd (resonant)
  Mixed, // none of the reducible structures
};

struct CaseTag {
  Case kind = Case::C1;
  std::optional<double> k;  // ratio b_e / a for the primed reducible cases
};

const char* case_name(Case c);
std::string to_string(const CaseTag& tag);

CaseTag classify_ivp(double a, double b);
CaseTag classify_bvp(const ScalarField& a, const ScalarField& b, double tol = 1e-9);

// How a kernel's diagonal discontinuity is expressed.
enum class JumpKind { Value, Derivative };

class GreenKernel {
 public:
  using Fn = std::function<double(double, double)>;
  using RowFn = std::function<std::function<double(double)>(double)>;
  using BreakFn = std::function<std::vector<double>(double)>;

  GreenKernel() = default;
  GreenKernel(Fn fn, Interval t_domain, Interval s_domain, double jump, JumpKind kind, std::string support,
              BreakFn breaks, RowFn row = {});

  double operator()(double t, double s) const { return (*fn_)(t, s); }
  // G(t, .) with per-row quantities hoisted; falls back to a closure over operator().
  std::function<double(double)> row(double t) const;
  // s-breakpoints of the row G(t, .): the places the kernel switches formula.
  std::vector<double> breakpoints(double t) const { return breaks_ ? breaks_(t) : std::vector<double>{}; }

  const Interval& t_domain() const { return t_domain_; }
  const Interval& s_domain() const { return s_domain_; }
  // Value jump G(t,t-) - G(t,t+), or for Derivative kernels dG/dt(t,t-) - dG/dt(t,t+).
  double jump() const { return jump_; }
  JumpKind jump_kind() const { return kind_; }
  const std::string& support() const { return support_; }

 private:
  std::shared_ptr<const Fn> fn_;
  Interval t_domain_, s_domain_;
  double jump_ = 1.0;
  JumpKind kind_ = JumpKind::Value;
  std::string support_;
  BreakFn breaks_;
  RowFn row_;
};

struct IvpProblem {
  double a = 0.0;  // coefficient of x(-t)
  double b = 0.0;  // coefficient of x(t)
  double t0 = 0.0;
  double c = 0.0;
  ScalarField h;   // forcing; its domain is where the solution is sought
};

struct BvpProblem {
  ScalarField a;  // coefficient of x(-t)
  ScalarField b;  // coefficient of x(t)
  ScalarField h;
  double T = 1.0;  // periodic condition x(-T) = x(T)
};

}  // namespace involute
