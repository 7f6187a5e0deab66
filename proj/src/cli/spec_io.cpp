#include "spec_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "involute/error.hpp"

namespace involute::cli {

using nlohmann::json;
using Op = Expr::Op;

namespace {

Expr parse_value(const json& v, const char* key) {
  if (v.is_number()) return Expr::number(v.get<double>());
  if (v.is_string()) {
    try {
      return Expr::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw Error(e.kind(), std::string("field '") + key + "': " + e.what());
    }
  }
  fail(ErrorKind::Syntax, std::string("field '") + key + "' must be a number or an expression string");
}

Interval parse_interval(const json& v, const char* key) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(ErrorKind::Syntax, std::string("field '") + key + "' must be [lo, hi]");
  Interval d{v[0].get<double>(), v[1].get<double>()};
  if (!(d.lo < d.hi)) fail(ErrorKind::Domain, std::string("interval '") + key + "' is not well ordered");
  return d;
}

std::optional<double> opt_number(const json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  if (!j[key].is_number()) fail(ErrorKind::Syntax, std::string("field '") + key + "' must be a number");
  return j[key].get<double>();
}

Expr num(double v) { return Expr::number(v); }
Expr mul(const Expr& a, const Expr& b) { return Expr::binary(Op::Mul, a, b); }
Expr div(const Expr& a, const Expr& b) { return Expr::binary(Op::Div, a, b); }

}  // namespace

FieldSpec FieldSpec::parse(const json& j, const char* key) {
  if (j.is_object()) {
    if (!j.contains("left") || !j.contains("right") || !j.contains("split") || !j["split"].is_number())
      fail(ErrorKind::Syntax, std::string("piecewise field '") + key + "' needs split, left and right");
    return {parse_value(j["left"], key), parse_value(j["right"], key), j["split"].get<double>()};
  }
  return plain(parse_value(j, key));
}

ScalarField FieldSpec::field(Interval d) const {
  if (!right) return ScalarField::from_expr(left, d);
  auto l = std::make_shared<const Expr>(left);
  auto r = std::make_shared<const Expr>(*right);
  double s0 = split;
  return ScalarField([l, r, s0](double t) { return t <= s0 ? l->eval(t) : r->eval(t); }, d);
}

bool FieldSpec::is_zero() const {
  auto zero = [](const Expr& e) { return !e.depends_on_t() && e.eval(0.0) == 0.0; };
  return zero(left) && (!right || zero(*right));
}

json FieldSpec::to_json() const {
  if (!right) return left.print();
  return json{{"split", split}, {"left", left.print()}, {"right", right->print()}};
}

Involution InvolutionSpec::build() const {
  return Involution::make(phi.field(domain), dphi.field(domain), domain, fixed_point);
}

json InvolutionSpec::to_json() const {
  json j{{"phi", phi.to_json()}, {"dphi", dphi.to_json()}, {"domain", {domain.lo, domain.hi}}};
  if (fixed_point) j["fixed_point"] = *fixed_point;
  return j;
}

namespace {

InvolutionSpec parse_involution(const json& j, const char* key) {
  if (!j.is_object() || !j.contains("phi") || !j.contains("dphi") || !j.contains("domain"))
    fail(ErrorKind::Syntax, std::string("'") + key + "' needs phi, dphi and domain");
  InvolutionSpec s;
  s.phi = FieldSpec::parse(j["phi"], "phi");
  s.dphi = FieldSpec::parse(j["dphi"], "dphi");
  s.domain = parse_interval(j["domain"], "domain");
  s.fixed_point = opt_number(j, "fixed_point");
  return s;
}

}  // namespace

ProblemSpec ProblemSpec::from_json(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Syntax, "problem spec must be a JSON object");
  ProblemSpec p;
  if (!j.contains("kind") || !j["kind"].is_string()) fail(ErrorKind::Syntax, "problem spec needs a 'kind'");
  p.kind = j["kind"].get<std::string>();
  if (p.kind != "ivp" && p.kind != "bvp" && p.kind != "general")
    fail(ErrorKind::Syntax, "kind must be ivp, bvp or general");
  for (const char* key : {"a", "b", "h"})
    if (!j.contains(key)) fail(ErrorKind::Syntax, std::string("missing field '") + key + "'");
  p.a = FieldSpec::parse(j["a"], "a");
  p.b = FieldSpec::parse(j["b"], "b");
  p.h = FieldSpec::parse(j["h"], "h");
  p.T = opt_number(j, "T");
  if (p.T && !(*p.T > 0.0)) fail(ErrorKind::Domain, "T must be positive");
  if (p.kind == "ivp") {
    p.t0 = opt_number(j, "t0");
    p.c0 = opt_number(j, "c");
  } else if (p.kind == "general") {
    if (j.contains("c")) p.c = FieldSpec::parse(j["c"], "c");
    p.d = j.contains("d") ? FieldSpec::parse(j["d"], "d") : FieldSpec::plain(num(1.0));
    if (!j.contains("involution")) fail(ErrorKind::Syntax, "general problem needs an involution");
    p.involution = parse_involution(j["involution"], "involution");
    if (j.contains("target")) p.target = parse_involution(j["target"], "target");
    if (j.contains("g")) {
      p.g = FieldSpec::parse(j["g"], "g");
      if (!j.contains("dg")) fail(ErrorKind::Syntax, "custom g needs its derivative dg");
      p.dg = FieldSpec::parse(j["dg"], "dg");
    }
  }
  return p;
}

ProblemSpec ProblemSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open spec file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(ErrorKind::Syntax, e.byte, std::string("malformed JSON in ") + path);
  }
  return from_json(j);
}

json ProblemSpec::to_json() const {
  json j{{"kind", kind}, {"a", a.to_json()}, {"b", b.to_json()}, {"h", h.to_json()}};
  if (T) j["T"] = *T;
  if (t0) j["t0"] = *t0;
  if (c0) j["c"] = *c0;
  if (c) j["c"] = c->to_json();
  if (d) j["d"] = d->to_json();
  if (involution) j["involution"] = involution->to_json();
  if (target) j["target"] = target->to_json();
  if (g) j["g"] = g->to_json();
  if (dg) j["dg"] = dg->to_json();
  return j;
}

double ProblemSpec::half_length() const { return T.value_or(1.0); }

IvpProblem ProblemSpec::ivp() const {
  auto constant = [](const FieldSpec& f, const char* key) {
    if (f.piecewise() || f.left.depends_on_t())
      fail(ErrorKind::Unsupported, std::string("IVP coefficient '") + key + "' must be constant");
    return f.left.eval(0.0);
  };
  double R = half_length();
  return {constant(a, "a"), constant(b, "b"), t0.value_or(0.0), c0.value_or(0.0), h.field({-R, R})};
}

BvpProblem ProblemSpec::bvp() const {
  double R = half_length();
  Interval d{-R, R};
  return {a.field(d), b.field(d), h.field(d), R};
}

GeneralProblem ProblemSpec::general() const {
  if (!involution) fail(ErrorKind::Syntax, "general problem needs an involution");
  Involution inv = involution->build();
  Interval dom = inv.domain;
  GeneralProblem g;
  g.a = a.field(dom);
  g.b = b.field(dom);
  g.c = c ? c->field(dom) : ScalarField::constant(0.0, dom);
  g.d = d ? d->field(dom) : ScalarField::constant(1.0, dom);
  g.h = h.field(dom);
  g.inv = inv;
  return g;
}

Involution ProblemSpec::target_involution() const {
  return target ? target->build() : Involution::reflection(1.0);
}

Correspondence ProblemSpec::correspondence() const {
  Involution phi = involution->build(), psi = target_involution();
  if (g) return correspondence_map(phi, psi, g->field({psi.domain.lo, psi.fixed_point}), dg->field({psi.domain.lo, psi.fixed_point}));
  return correspondence_map(phi, psi);
}

ProblemSpec transform_spec(const ProblemSpec& p) {
  if (p.kind != "general" || !p.involution) fail(ErrorKind::Unsupported, "transform needs a general problem");
  // validates both involutions and g before anything is written
  Correspondence corr = p.correspondence();
  (void)corr;
  Involution phi = p.involution->build(), psi = p.target_involution();
  InvolutionSpec tspec = p.target ? *p.target
                                  : InvolutionSpec{FieldSpec::plain(Expr::parse("-t")), FieldSpec::plain(num(-1.0)),
                                                   {-1.0, 1.0}, 0.0};

  auto plain = [](const std::optional<FieldSpec>& f, const char* what) {
    if (f && f->piecewise()) fail(ErrorKind::Unsupported, std::string("piecewise ") + what + " cannot be transformed");
    return f ? f->left : Expr();
  };
  for (const FieldSpec* f : std::initializer_list<const FieldSpec*>{&p.a, &p.b, &p.h, &p.involution->phi, &p.involution->dphi, &tspec.phi, &tspec.dphi})
    if (f->piecewise()) fail(ErrorKind::Unsupported, "piecewise inputs cannot be transformed");

  const Expr t = Expr::variable();
  const Expr Phi = p.involution->phi.left, dPhi = p.involution->dphi.left;
  const Expr Psi = tspec.phi.left, dPsi = tspec.dphi.left;
  Expr G, dG;
  if (p.g) {
    G = plain(p.g, "g");
    dG = plain(p.dg, "dg");
  } else {
    const double s1 = psi.domain.lo, s0 = psi.fixed_point, t1 = phi.domain.lo, t0 = phi.fixed_point;
    const double slope = (t0 - t1) / (s0 - s1);
    G = Expr::binary(Op::Add, num(t1), mul(Expr::binary(Op::Sub, t, num(s1)), num(slope)));
    dG = num(slope);
  }
  const double s0 = psi.fixed_point;

  // f = g on the left, phi o g o psi on the right; f' by the chain rule
  const Expr fL = G, fR = Phi.substitute(G.substitute(Psi));
  const Expr dfL = dG, dfR = mul(mul(dPhi.substitute(G.substitute(Psi)), dG.substitute(Psi)), dPsi);
  auto piece = [s0](Expr l, Expr r) { return FieldSpec{std::move(l), std::move(r), s0}; };
  auto compose = [&](const Expr& u) { return piece(u.substitute(fL), u.substitute(fR)); };

  ProblemSpec out;
  out.kind = "general";
  out.a = compose(p.a.left);
  out.b = compose(p.b.left);
  out.h = compose(p.h.left);
  const Expr dcoef = p.d ? plain(p.d, "d") : num(1.0);
  out.d = piece(div(dcoef.substitute(fL), dfL), div(dcoef.substitute(fR), dfR));
  if (p.c && !p.c->is_zero()) {
    const Expr ccoef = plain(p.c, "c");
    // c(f(s)) / f'(psi(s)): psi swaps the two halves
    out.c = piece(div(ccoef.substitute(fL), dfR.substitute(Psi)), div(ccoef.substitute(fR), dfL.substitute(Psi)));
  }
  out.involution = tspec;
  return out;
}

}  // namespace involute::cli
