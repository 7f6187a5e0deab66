#pragma once

// ProblemSpec: the JSON problem description read and written by the command-line tool.

#include <optional>
#include <string>

#include <json.hpp>

#include "involute/core.hpp"
#include "involute/expr.hpp"
#include "involute/involution.hpp"

namespace involute::cli {

// A coefficient: one expression, or two expressions glued at `split` (left applies for t <= split).
struct FieldSpec {
  Expr left;
  std::optional<Expr> right;
  double split = 0.0;

  static FieldSpec parse(const nlohmann::json& j, const char* key);
  static FieldSpec plain(Expr e) { return {std::move(e), std::nullopt, 0.0}; }

  ScalarField field(Interval d = Interval::all()) const;
  bool piecewise() const { return right.has_value(); }
  bool is_zero() const;
  nlohmann::json to_json() const;
};

struct InvolutionSpec {
  FieldSpec phi, dphi;
  Interval domain;
  std::optional<double> fixed_point;

  Involution build() const;
  nlohmann::json to_json() const;
};

struct ProblemSpec {
  std::string kind;  // "ivp" | "bvp" | "general"
  FieldSpec a, b, h;
  std::optional<FieldSpec> c, d;  // general problems only
  std::optional<double> T, t0, c0;  // c0 is the IVP initial value (key "c")
  std::optional<InvolutionSpec> involution, target;
  std::optional<FieldSpec> g, dg;

  static ProblemSpec from_json(const nlohmann::json& j);
  static ProblemSpec load(const std::string& path);
  nlohmann::json to_json() const;

  double half_length() const;  // T, defaulting to 1 for IVPs
  IvpProblem ivp() const;
  BvpProblem bvp() const;
  GeneralProblem general() const;
  Involution target_involution() const;  // reflection on [-1, 1] unless given
  Correspondence correspondence() const;
};

// Change of involution written back as a ProblemSpec with piecewise coefficients.
ProblemSpec transform_spec(const ProblemSpec& p);

}  // namespace involute::cli
