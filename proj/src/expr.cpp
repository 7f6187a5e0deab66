#include "involute/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "involute/error.hpp"

namespace involute {

namespace {

struct FuncEntry {
  const char* name;
  Func fn;
};

constexpr FuncEntry kFuncs[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos}, {"tan", Func::Tan},   {"sinh", Func::Sinh},
    {"cosh", Func::Cosh}, {"exp", Func::Exp}, {"ln", Func::Ln},     {"abs", Func::Abs},
    {"atan", Func::Atan}, {"atanh", Func::Atanh}, {"sqrt", Func::Sqrt},
};

[[noreturn]] void eval_error(const char* what, double x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s (argument %.17g)", what, x);
  throw Error(ErrorKind::Evaluation, buf);
}

double apply(Func fn, double x) {
  switch (fn) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: {
      double c = std::cos(x);
      if (c == 0.0) eval_error("tan at a pole", x);
      return std::tan(x);
    }
    case Func::Sinh: return std::sinh(x);
    case Func::Cosh: return std::cosh(x);
    case Func::Exp: return std::exp(x);
    case Func::Ln:
      if (!(x > 0.0)) eval_error("ln of a non-positive number", x);
      return std::log(x);
    case Func::Abs: return std::fabs(x);
    case Func::Atan: return std::atan(x);
    case Func::Atanh:
      if (!(std::fabs(x) < 1.0)) eval_error("atanh outside (-1, 1)", x);
      return std::atanh(x);
    case Func::Sqrt:
      if (x < 0.0) eval_error("sqrt of a negative number", x);
      return std::sqrt(x);
  }
  return 0.0;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

}  // namespace

const char* func_name(Func fn) {
  for (const auto& e : kFuncs)
    if (e.fn == fn) return e.name;
  return "?";
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(ErrorKind::Syntax, pos_, "empty expression");
    auto root = parse_expr();
    skip_ws();
    if (pos_ < src_.size())
      throw ParseError(ErrorKind::Syntax, pos_, std::string("unexpected '") + src_[pos_] + "'");
    out_.root_ = root;
    return std::move(out_);
  }

 private:
  using Op = Expr::Op;

  std::int32_t push(Expr::Node n) {
    out_.nodes_.push_back(n);
    return static_cast<std::int32_t>(out_.nodes_.size() - 1);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size())
        throw ParseError(ErrorKind::Syntax, pos_, std::string("expected '") + c + "' but input ended");
      throw ParseError(ErrorKind::Syntax, pos_, std::string("expected '") + c + "'");
    }
  }

  std::int32_t parse_expr() {
    auto lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = push({Op::Add, Func::Sin, 0.0, lhs, parse_term()});
      else if (accept('-'))
        lhs = push({Op::Sub, Func::Sin, 0.0, lhs, parse_term()});
      else
        return lhs;
    }
  }

  std::int32_t parse_term() {
    auto lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = push({Op::Mul, Func::Sin, 0.0, lhs, parse_unary()});
      else if (accept('/'))
        lhs = push({Op::Div, Func::Sin, 0.0, lhs, parse_unary()});
      else
        return lhs;
    }
  }

  std::int32_t parse_unary() {
    if (accept('-')) return push({Op::Neg, Func::Sin, 0.0, parse_unary(), -1});
    return parse_power();
  }

  std::int32_t parse_power() {
    auto base = parse_primary();
    if (accept('^')) return push({Op::Pow, Func::Sin, 0.0, base, parse_unary()});
    return base;
  }

  std::int32_t parse_primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError(ErrorKind::Syntax, pos_, "unexpected end of input");
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (c == '(') {
      ++pos_;
      auto inner = parse_expr();
      expect(')');
      return inner;
    }
    if (is_ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      std::string_view name = src_.substr(start, pos_ - start);
      if (name == "t") return push({Op::Var});
      if (name == "pi") return push({Op::Pi});
      for (const auto& e : kFuncs) {
        if (name == e.name) {
          expect('(');
          auto arg = parse_expr();
          expect(')');
          return push({Op::Call, e.fn, 0.0, arg, -1});
        }
      }
      throw ParseError(ErrorKind::UnknownIdentifier, start, "unknown identifier '" + std::string(name) + "'");
    }
    throw ParseError(ErrorKind::Syntax, pos_, std::string("unexpected '") + c + "'");
  }

  std::int32_t parse_number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    if (pos_ - start == 1 && src_[start] == '.') throw ParseError(ErrorKind::Syntax, start, "malformed number");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      } else {
        pos_ = save;  // not an exponent; leave 'e' for the identifier check to reject
      }
    }
    std::string text(src_.substr(start, pos_ - start));
    double v = std::strtod(text.c_str(), nullptr);
    return push({Op::Num, Func::Sin, v});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Expr out_;
};

Expr Expr::parse(std::string_view src) { return ExprParser(src).run(); }

Expr Expr::number(double v) {
  Expr e;
  e.nodes_.push_back({Op::Num, Func::Sin, v});
  e.root_ = 0;
  return e;
}

Expr Expr::variable() {
  Expr e;
  e.nodes_.push_back({Op::Var});
  e.root_ = 0;
  return e;
}

double Expr::eval_node(std::int32_t i, double t) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::Num: return n.value;
    case Op::Var: return t;
    case Op::Pi: return std::numbers::pi;
    case Op::Neg: return -eval_node(n.lhs, t);
    case Op::Add: return eval_node(n.lhs, t) + eval_node(n.rhs, t);
    case Op::Sub: return eval_node(n.lhs, t) - eval_node(n.rhs, t);
    case Op::Mul: return eval_node(n.lhs, t) * eval_node(n.rhs, t);
    case Op::Div: {
      double num = eval_node(n.lhs, t);
      double den = eval_node(n.rhs, t);
      if (den == 0.0) eval_error("division by zero", num);
      return num / den;
    }
    case Op::Pow: {
      double base = eval_node(n.lhs, t);
      double ex = eval_node(n.rhs, t);
      if (base == 0.0 && ex < 0.0) eval_error("zero raised to a negative power", ex);
      double r = std::pow(base, ex);
      if (std::isnan(r)) eval_error("negative base with non-integer exponent", base);
      return r;
    }
    case Op::Call: return apply(n.fn, eval_node(n.lhs, t));
  }
  return 0.0;
}

bool Expr::depends_on_t() const {
  for (const auto& n : nodes_)
    if (n.op == Op::Var) return true;
  return false;
}

void Expr::print_node(std::int32_t i, std::string& out) const {
  const Node& n = nodes_[static_cast<std::size_t>(i)];
  switch (n.op) {
    case Op::Num: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", n.value);
      out += buf;
      return;
    }
    case Op::Var: out += 't'; return;
    case Op::Pi: out += "pi"; return;
    case Op::Neg:
      out += "(-";
      print_node(n.lhs, out);
      out += ')';
      return;
    case Op::Call:
      out += func_name(n.fn);
      out += '(';
      print_node(n.lhs, out);
      out += ')';
      return;
    default: break;
  }
  static constexpr char kSym[] = {'?', '?', '?', '?', '+', '-', '*', '/', '^'};
  out += '(';
  print_node(n.lhs, out);
  out += ' ';
  out += kSym[static_cast<int>(n.op)];
  out += ' ';
  print_node(n.rhs, out);
  out += ')';
}

std::string Expr::print() const {
  std::string out;
  print_node(root_, out);
  return out;
}

bool Expr::equal_node(std::int32_t i, const Expr& other, std::int32_t j) const {
  const Node& a = nodes_[static_cast<std::size_t>(i)];
  const Node& b = other.nodes_[static_cast<std::size_t>(j)];
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::Num: return a.value == b.value;
    case Op::Var:
    case Op::Pi: return true;
    case Op::Neg: return equal_node(a.lhs, other, b.lhs);
    case Op::Call: return a.fn == b.fn && equal_node(a.lhs, other, b.lhs);
    default: return equal_node(a.lhs, other, b.lhs) && equal_node(a.rhs, other, b.rhs);
  }
}

bool operator==(const Expr& a, const Expr& b) { return a.equal_node(a.root_, b, b.root_); }

// Copy the subtree of `other` rooted at i into this expression; variables become `var_repl` when given.
std::int32_t Expr::graft(const Expr& other, std::int32_t i, const Expr* var_repl) {
  Node n = other.nodes_[static_cast<std::size_t>(i)];
  if (n.op == Op::Var && var_repl) return graft(*var_repl, var_repl->root_, nullptr);
  if (n.lhs >= 0) n.lhs = graft(other, n.lhs, var_repl);
  if (n.rhs >= 0) n.rhs = graft(other, n.rhs, var_repl);
  nodes_.push_back(n);
  return static_cast<std::int32_t>(nodes_.size() - 1);
}

Expr Expr::substitute(const Expr& arg) const {
  Expr out;
  out.root_ = out.graft(*this, root_, &arg);
  return out;
}

Expr Expr::unary(Op op, const Expr& a) {
  Expr out;
  auto l = out.graft(a, a.root_, nullptr);
  out.nodes_.push_back({op, Func::Sin, 0.0, l, -1});
  out.root_ = static_cast<std::int32_t>(out.nodes_.size() - 1);
  return out;
}

Expr Expr::binary(Op op, const Expr& a, const Expr& b) {
  Expr out;
  auto l = out.graft(a, a.root_, nullptr);
  auto r = out.graft(b, b.root_, nullptr);
  out.nodes_.push_back({op, Func::Sin, 0.0, l, r});
  out.root_ = static_cast<std::int32_t>(out.nodes_.size() - 1);
  return out;
}

Expr Expr::call(Func fn, const Expr& a) {
  Expr out;
  auto l = out.graft(a, a.root_, nullptr);
  out.nodes_.push_back({Op::Call, fn, 0.0, l, -1});
  out.root_ = static_cast<std::int32_t>(out.nodes_.size() - 1);
  return out;
}

}  // namespace involute
