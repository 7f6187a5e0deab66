#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "involute/bvp.hpp"
#include "involute/error.hpp"
#include "involute/involution.hpp"
#include "involute/ivp.hpp"
#include "involute/numerics.hpp"
#include "spec_io.hpp"

namespace involute::cli {

namespace {

struct Flags {
  std::string spec, out;
  int n = 513;
  std::optional<double> tol;
  bool force = false;
  std::string trange, srange;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g12(double v) { return fmt("%.12g", v); }

// CSV accumulated in memory and emitted in one go.
class Csv {
 public:
  explicit Csv(const char* header) : body_(header) { body_ += '\n'; }
  void row(std::initializer_list<double> cells) {
    bool first = true;
    for (double c : cells) {
      if (!first) body_ += ',';
      body_ += g12(c);
      first = false;
    }
    body_ += '\n';
  }
  const std::string& str() const { return body_; }

 private:
  std::string body_;
};

void emit(const Flags& f, const std::string& content, std::ostream& out) {
  if (f.out.empty())
    out << content;
  else
    write_atomic(f.out, content);
}

Interval parse_range(const std::string& s, Interval fallback) {
  if (s.empty()) return fallback;
  std::string t = s;
  std::replace(t.begin(), t.end(), ':', ',');
  double lo, hi;
  char extra;
  if (std::sscanf(t.c_str(), "%lf,%lf%c", &lo, &hi, &extra) != 2 || !(lo < hi))
    fail(ErrorKind::Syntax, "range must look like lo:hi with lo < hi, got '" + s + "'");
  return {lo, hi};
}

std::vector<double> nodes(Interval d, int n) {
  if (n < 2) fail(ErrorKind::Domain, "--n must be at least 2");
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = d.lo + (d.hi - d.lo) * i / (n - 1);
  x.back() = d.hi;
  return x;
}

const char* sign_word(Sign s) {
  switch (s) {
    case Sign::Positive: return "positive";
    case Sign::Negative: return "negative";
    case Sign::Changes: return "changes sign";
    default: return "unknown";
  }
}

std::string bound(double v) { return std::isinf(v) ? (v > 0 ? "inf" : "-inf") : fmt("%.6f", v); }

// Points where piecewise coefficients switch formula; residuals skip them.
std::vector<double> coefficient_breaks(const ProblemSpec& p) {
  std::vector<double> x{0.0};
  for (const FieldSpec* f : {&p.a, &p.b, &p.h})
    if (f->piecewise()) {
      x.push_back(f->split);
      x.push_back(-f->split);
    }
  return x;
}

GreenKernel bvp_kernel(const BvpProblem& p, const CaseTag& tag, std::ostream& err) {
  auto ca = p.a.constant_value(), cb = p.b.constant_value();
  switch (tag.kind) {
    case Case::C4p:
    case Case::C5p: fail(ErrorKind::Resonant, std::string(case_name(tag.kind)) + " is resonant: no Green's function");
    case Case::Mixed: {
      err << "note: mixed case; writing the kernel of x' + (a+b)x = h used by the Picard map\n";
      ScalarField a = p.a, b = p.b;
      ScalarField v([a, b](double t) { return a(t) + b(t); }, {-p.T, p.T});
      return green_ode_periodic(v, p.T);
    }
    default:
      if (ca && cb) return *ca == *cb ? green_bvp_c3(*ca, p.T) : green_bvp_constant(*ca, *cb, p.T);
      return green_bvp_nonconstant(p);
  }
}

// ---------------------------------------------------------------- classify

int cmd_classify(const ProblemSpec& spec, std::ostream& out) {
  if (spec.kind == "ivp") {
    IvpProblem p = spec.ivp();
    CaseTag tag = classify_ivp(p.a, p.b);
    switch (tag.kind) {
      case Case::C1: out << "C1, η = " << fmt("%.6f", eta(p.a, p.b)) << '\n'; break;
      case Case::C2: out << "C2, σ = " << fmt("%.6f", sigma_ivp(p.a, p.b)) << '\n'; break;
      default: out << case_name(tag.kind) << '\n';
    }
    if (spec.t0) {
      bool unique = uniqueness_check(p.a, p.b, p.t0);
      out << "t0 = " << fmt("%g", p.t0) << ": "
          << (unique ? "unique solution" : "homogeneous solution vanishes, no unique solution") << '\n';
    }
    return 0;
  }
  if (spec.kind == "general") {
    GeneralProblem g = spec.general();
    out << "general problem, involution fixed point " << fmt("%.6f", g.inv.fixed_point) << " on ["
        << fmt("%g", g.inv.domain.lo) << ", " << fmt("%g", g.inv.domain.hi) << "]\n";
    return 0;
  }

  BvpProblem p = spec.bvp();
  CaseTag tag = classify_bvp(p);
  const std::string k = tag.k ? fmt("%g", *tag.k) : "";
  switch (tag.kind) {
    case Case::C4p:
    case Case::C5p: {
      out << case_name(tag.kind) << " (resonant)\n";
      SolutionFamily fam = tag.kind == Case::C4p ? solve_resonant_c4(p) : solve_resonant_c5(p);
      out << "obstruction = " << fmt("%.6g", fam.obstruction) << " → "
          << (fam.solvable ? "solvable, one-parameter family" : "no periodic solution") << '\n';
      return 0;
    }
    case Case::Mixed: {
      double q = contraction_constant(p);
      out << "Mixed, contraction constant = " << fmt("%.6g", q) << " → "
          << (q < 1.0 ? "Picard iteration converges" : "convergence not guaranteed (--force to iterate)") << '\n';
      return 0;
    }
    default: break;
  }

  std::string head = std::string(case_name(tag.kind)) + ", k=" + k;
  try {
    SignVerdict v = constant_sign_check(p);
    if (tag.kind == Case::C1p)
      head += ", σ(k)=" + fmt("%.6f", v.threshold);
    else
      head += ", threshold=" + bound(v.threshold);
    head += ", |A(T)|=" + fmt("%.6g", v.abs_AT) + " → ";
    head += v.sign == Sign::Unknown ? std::string("sign not guaranteed") : std::string("constant sign (") + sign_word(v.sign) + ")";
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Resonant) throw;
    head += " → resonant: " + std::string(e.what());
  }
  out << head << '\n';
  return 0;
}

// ---------------------------------------------------------------- green

int cmd_green(const ProblemSpec& spec, const Flags& f, std::ostream& out, std::ostream& err) {
  if (spec.kind == "general") fail(ErrorKind::Unsupported, "green needs an ivp or bvp spec");
  const double R = spec.half_length();
  GreenKernel K;
  if (spec.kind == "ivp") {
    IvpProblem p = spec.ivp();
    K = green_ivp(p.a, p.b);
  } else {
    BvpProblem p = spec.bvp();
    K = bvp_kernel(p, classify_bvp(p), err);
  }
  Interval tr = parse_range(f.trange, {-R, R}), sr = parse_range(f.srange, {-R, R});
  if (spec.kind == "bvp" && (tr.lo < -R || tr.hi > R || sr.lo < -R || sr.hi > R))
    fail(ErrorKind::Domain, "kernel ranges must lie in [-T, T]");
  Csv csv("t,s,G");
  auto ss = nodes(sr, f.n);
  for (double t : nodes(tr, f.n)) {
    auto row = K.row(t);
    for (double s : ss) csv.row({t, s, row(s)});
  }
  emit(f, csv.str(), out);
  return 0;
}

// ---------------------------------------------------------------- solve

struct Solved {
  ScalarField u;
  Interval domain;
  std::string summary;
};

Solved solve_any(const ProblemSpec& spec, const Flags& f) {
  if (spec.kind == "ivp") {
    IvpProblem p = spec.ivp();
    CaseTag tag = classify_ivp(p.a, p.b);
    ScalarField u = solve_ivp(p);
    const double R = spec.half_length();
    std::vector<double> skip{0.0, p.t0, -p.t0};
    ResidualReport r = residual_check(u, ScalarField::constant(p.a), ScalarField::constant(p.b), p.h,
                                      Grid::uniform(R, f.n), skip);
    std::string s = "case " + to_string(tag) + ", max residual " + fmt("%.3g", r.max_abs) + " over " +
                    std::to_string(r.checked) + " nodes, |u(t0) - c| = " + fmt("%.3g", std::fabs(u(p.t0) - p.c));
    return {u, {-R, R}, s};
  }
  PicardOptions po;
  if (f.tol) po.tol = *f.tol;
  po.force = f.force;
  if (spec.kind == "bvp") {
    BvpProblem p = spec.bvp();
    BvpSolution sol = solve_periodic(p, po);
    auto skip = coefficient_breaks(spec);
    ResidualReport r = residual_check(sol.u, p.a, p.b, p.h, Grid::uniform(p.T, f.n), skip);
    std::string s = "case " + to_string(sol.tag) + " via " + sol.method + ", max residual " +
                    fmt("%.3g", r.max_abs) + " over " + std::to_string(r.checked) + " nodes, boundary defect " +
                    fmt("%.3g", std::fabs(sol.u(p.T) - sol.u(-p.T)));
    if (sol.iterations) s += ", " + std::to_string(sol.iterations) + " Picard iterations (q = " + fmt("%.3g", sol.contraction) + ")";
    return {sol.u, {-p.T, p.T}, s};
  }
  GeneralProblem g = spec.general();
  TransportedSolution ts = solve_general(g, spec.target_involution(), spec.correspondence(), po);
  ResidualReport r = general_residual(ts.x, g, f.n);
  Interval d = g.inv.domain;
  std::string s = "general problem via " + ts.inner.method + " on the reflected problem (" + to_string(ts.inner.tag) +
                  "), max residual " + fmt("%.3g", r.max_abs) + " over " + std::to_string(r.checked) +
                  " nodes, boundary defect " + fmt("%.3g", std::fabs(ts.x(d.hi) - ts.x(d.lo)));
  return {ts.x, d, s};
}

int cmd_solve(const ProblemSpec& spec, const Flags& f, std::ostream& out, std::ostream& err) {
  Solved s = solve_any(spec, f);
  Csv csv("t,u");
  for (double t : nodes(s.domain, f.n)) csv.row({t, s.u(t)});
  emit(f, csv.str(), out);
  err << s.summary << '\n';
  return 0;
}

// ---------------------------------------------------------------- sign

int cmd_sign(const ProblemSpec& spec, const Flags& f, std::ostream& out) {
  const double R = spec.half_length();
  GreenKernel K;
  if (spec.kind == "ivp") {
    IvpProblem p = spec.ivp();
    SignReport rep = sign_classify_ivp(p.a, p.b);
    out << "case " << to_string(rep.tag) << '\n';
    for (const auto& r : rep.regions)
      out << "region " << r.region << ": " << sign_word(r.sign) << " for t in (" << bound(r.t_lo) << ", "
          << bound(r.t_hi) << ")\n";
    for (const auto& b : rep.bands)
      out << "band [" << bound(b.lo) << ", " << bound(b.hi) << "]: " << sign_word(b.sign) << '\n';
    if (!rep.note.empty()) out << rep.note << '\n';
    K = green_ivp(p.a, p.b);
  } else if (spec.kind == "bvp") {
    BvpProblem p = spec.bvp();
    SignVerdict v = constant_sign_check(p);
    CaseTag tag = classify_bvp(p);
    out << "case " << to_string(tag) << '\n';
    out << "threshold " << bound(v.threshold) << ", |A(T)| = " << fmt("%.6f", v.abs_AT) << '\n';
    out << "verdict: " << (v.sign == Sign::Unknown ? "sign not guaranteed" : sign_word(v.sign)) << " (" << v.reason
        << ")\n";
    out << "sampled G in [" << fmt("%.6g", v.sampled_min) << ", " << fmt("%.6g", v.sampled_max) << "]"
        << (v.consistent ? "" : ", contradicts the verdict") << '\n';
    K = green_bvp_nonconstant(p);
  } else {
    fail(ErrorKind::Unsupported, "sign needs an ivp or bvp spec");
  }
  if (!f.out.empty()) {
    // staggered nodes keep the grid off the diagonals where the kernel jumps
    Csv csv("t,s,G,sign");
    const int n = f.n;
    for (int i = 0; i < n; ++i) {
      double t = -R + 2.0 * R * (i + 0.5) / n;
      auto row = K.row(t);
      for (int j = 0; j < n; ++j) {
        double s = -R + 2.0 * R * (j + 0.25) / n, g = row(s);
        csv.row({t, s, g, static_cast<double>((g > 0) - (g < 0))});
      }
    }
    write_atomic(f.out, csv.str());
  }
  return 0;
}

// ---------------------------------------------------------------- transform

int cmd_transform(const ProblemSpec& spec, const Flags& f, std::ostream& out) {
  ProblemSpec t = transform_spec(spec);
  emit(f, t.to_json().dump(2) + "\n", out);
  return 0;
}

// ---------------------------------------------------------------- check

int cmd_check(const ProblemSpec& spec, const Flags& f, std::ostream& out) {
  const int samples = std::min(f.n, 101);
  double worst = 0.0;
  double tol;
  std::string what;
  if (spec.kind == "ivp") {
    IvpProblem p = spec.ivp();
    const double R = spec.half_length();
    tol = f.tol.value_or(1e-6);
    ScalarField u = solve_ivp(p), o = oracle_ivp(p, Grid::uniform(R, 4001));
    CaseTag tag = classify_ivp(p.a, p.b);
    std::optional<ScalarField> alt;
    if (tag.kind == Case::C3_1) alt = alt_solve_c31(p);
    if (tag.kind == Case::C3_2) alt = alt_solve_c32(p);
    double alt_worst = 0.0;
    for (double t : nodes({-R, R}, samples)) {
      worst = std::max(worst, std::fabs(u(t) - o(t)));
      if (alt) alt_worst = std::max(alt_worst, std::fabs(u(t) - (*alt)(t)));
    }
    if (alt) out << "max |kernel − closed form| = " << fmt("%.3e", alt_worst) << '\n';
    worst = std::max(worst, alt_worst);
    what = "RK4 oracle";
  } else if (spec.kind == "bvp") {
    BvpProblem p = spec.bvp();
    tol = f.tol.value_or(1e-5);
    PicardOptions po;
    po.force = f.force;
    BvpSolution sol = solve_periodic(p, po);
    ScalarField o = oracle_bvp_shooting(p);
    for (double t : nodes({-p.T, p.T}, samples)) worst = std::max(worst, std::fabs(sol.u(t) - o(t)));
    what = "shooting oracle";
  } else {
    GeneralProblem g = spec.general();
    tol = f.tol.value_or(1e-5);
    PicardOptions po;
    po.force = f.force;
    TransportedSolution ts = solve_general(g, spec.target_involution(), spec.correspondence(), po);
    worst = general_residual(ts.x, g, std::max(samples, 201)).max_abs;
    what = "residual of the original equation";
    out << "max residual = " << fmt("%.3e", worst) << " (" << what << ", tol " << fmt("%.1e", tol) << ")\n";
    out << (worst <= tol ? "PASS" : "FAIL") << '\n';
    return worst <= tol ? 0 : 1;
  }
  out << "max |closed-form − oracle| = " << fmt("%.3e", worst) << " over " << samples << " points (" << what
      << ", tol " << fmt("%.1e", tol) << ")\n";
  out << (worst <= tol ? "PASS" : "FAIL") << '\n';
  return worst <= tol ? 0 : 1;
}

const char* kHelpFooter =
    "Expressions: numbers, t, pi; + - * / ^ (right-associative) and unary minus;\n"
    "functions sin cos tan sinh cosh exp ln abs atan atanh sqrt.\n"
    "Exit codes: 0 ok, 1 I/O or check mismatch, 2 unsupported/degenerate, 3 resonance,\n"
    "4 convergence failure, 5 parse error.";

}  // namespace

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) fail(ErrorKind::Io, "cannot write " + tmp.string());
    o << content;
    o.flush();
    if (!o) fail(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorKind::Io, "cannot move output into place at " + path);
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reflection and involution differential equations: Green's functions, solvers, sign checks",
               "involute"};
  app.footer(kHelpFooter);
  app.require_subcommand(1);
  Flags f;
  const char* names[][2] = {{"classify", "Report case, thresholds and resonance"},
                            {"green", "Tabulate the Green's function (t,s,G)"},
                            {"solve", "Solve and tabulate (t,u); residual summary on stderr"},
                            {"sign", "Sign report; --out adds a region grid CSV"},
                            {"transform", "Rewrite a general problem for the target involution (JSON)"},
                            {"check", "Cross-check the closed form against an independent oracle"}};
  for (auto& nm : names) {
    CLI::App* sub = app.add_subcommand(nm[0], nm[1]);
    sub->add_option("--spec", f.spec, "ProblemSpec JSON file")->required();
    sub->add_option("--out", f.out, "Output path (stdout when omitted)");
    sub->add_option("--n", f.n, "Grid size")->capture_default_str();
    sub->add_option("--tol", f.tol, "Tolerance (Picard stopping rule, or check threshold)");
    sub->add_flag("--force", f.force, "Iterate even when the contraction constant is >= 1");
    if (std::string(nm[0]) == "green") {
      sub->add_option("--trange", f.trange, "t range lo:hi (default [-T, T])");
      sub->add_option("--srange", f.srange, "s range lo:hi (default [-T, T])");
    }
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "involute: " << e.what() << '\n';
    return 1;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    ProblemSpec spec = ProblemSpec::load(f.spec);
    if (cmd == "classify") return cmd_classify(spec, out);
    if (cmd == "green") return cmd_green(spec, f, out, err);
    if (cmd == "solve") return cmd_solve(spec, f, out, err);
    if (cmd == "sign") return cmd_sign(spec, f, out);
    if (cmd == "transform") return cmd_transform(spec, f, out);
    return cmd_check(spec, f, out);
  } catch (const Error& e) {
    err << "involute: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const nlohmann::json::exception& e) {
    err << "involute: bad spec: " << e.what() << '\n';
    return 5;
  }
}

}  // namespace involute::cli
