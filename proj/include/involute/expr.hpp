#pragma once

// Arithmetic expressions in one variable t.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right associative, binds tighter than unary minus
//   primary := number | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
//
// Evaluation never yields a silent NaN: division by zero and out-of-domain
// function arguments throw Error(ErrorKind::Evaluation).

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace involute {

enum class Func : std::uint8_t { Sin, Cos, Tan, Sinh, Cosh, Exp, Ln, Abs, Atan, Atanh, Sqrt };

class Expr {
 public:
  enum class Op : std::uint8_t { Num, Var, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Op op;
    Func fn = Func::Sin;
    double value = 0.0;
    std::int32_t lhs = -1;
    std::int32_t rhs = -1;
  };

  static Expr parse(std::string_view src);
  static Expr number(double v);
  static Expr variable();

  double eval(double t) const { return eval_node(root_, t); }
  std::string print() const;
  bool depends_on_t() const;

  // Replace every occurrence of t with `arg`.
  Expr substitute(const Expr& arg) const;

  static Expr unary(Op op, const Expr& a);
  static Expr binary(Op op, const Expr& a, const Expr& b);
  static Expr call(Func fn, const Expr& a);

  const std::vector<Node>& nodes() const { return nodes_; }
  std::int32_t root() const { return root_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  friend class ExprParser;
  double eval_node(std::int32_t i, double t) const;
  void print_node(std::int32_t i, std::string& out) const;
  bool equal_node(std::int32_t i, const Expr& other, std::int32_t j) const;
  std::int32_t graft(const Expr& other, std::int32_t i, const Expr* var_repl);

  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

const char* func_name(Func fn);

}  // namespace involute
