#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "involute/bvp.hpp"
#include "involute/error.hpp"
#include "involute/expr.hpp"
#include "involute/involution.hpp"
#include "involute/ivp.hpp"

namespace py = pybind11;
using namespace involute;

namespace {

ScalarField on(const std::string& text, double R) { return ScalarField::from_text(text, {-R, R}); }

std::vector<double> sample(const ScalarField& u, const std::vector<double>& ts) {
  std::vector<double> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(u(t));
  return out;
}

py::object k_or_none(const CaseTag& tag) { return tag.k ? py::cast(*tag.k) : py::none(); }

const char* sign_name(Sign s) { return to_string(s); }

}  // namespace

PYBIND11_MODULE(_involute, m) {
  m.doc() = "Green's functions and solvers for differential equations with reflection or involution";

  static py::exception<Error> base(m, "InvoluteError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      base((std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Expr>(m, "Expr")
      .def(py::init(&Expr::parse), py::arg("text"))
      .def("__call__", &Expr::eval, py::arg("t"))
      .def("depends_on_t", &Expr::depends_on_t)
      .def("substitute", &Expr::substitute, py::arg("arg"))
      .def("__str__", &Expr::print)
      .def("__repr__", [](const Expr& e) { return "Expr('" + e.print() + "')"; })
      .def("__eq__", [](const Expr& a, const Expr& b) { return a == b; });

  py::class_<GreenKernel>(m, "Kernel")
      .def("__call__", py::overload_cast<double, double>(&GreenKernel::operator(), py::const_), py::arg("t"),
           py::arg("s"))
      .def("row", [](const GreenKernel& K, double t, const std::vector<double>& ss) {
        auto r = K.row(t);
        std::vector<double> out;
        for (double s : ss) out.push_back(r(s));
        return out;
      })
      .def_property_readonly("jump", &GreenKernel::jump)
      .def_property_readonly("derivative_jump", [](const GreenKernel& K) { return K.jump_kind() == JumpKind::Derivative; })
      .def_property_readonly("support", &GreenKernel::support);

  // classification
  m.def("classify_ivp", [](double a, double b) { return to_string(classify_ivp(a, b)); }, py::arg("a"), py::arg("b"));
  m.def(
      "classify_bvp",
      [](const std::string& a, const std::string& b, double T) {
        CaseTag tag = classify_bvp(on(a, T), on(b, T));
        return py::make_tuple(case_name(tag.kind), k_or_none(tag));
      },
      py::arg("a"), py::arg("b"), py::arg("T") = 1.0);
  m.def("uniqueness_check", &uniqueness_check, py::arg("a"), py::arg("b"), py::arg("t0"));

  // thresholds and bounds
  m.def("eta", &eta, py::arg("a"), py::arg("b"));
  m.def("sigma_ivp", &sigma_ivp, py::arg("a"), py::arg("b"));
  m.def("sigma_threshold", &sigma_threshold, py::arg("k"));
  m.def("bound_F", [](const std::string& v, double T) { return bound_F(on(v, T), T); }, py::arg("v"), py::arg("T"));
  m.def(
      "contraction_constant",
      [](const std::string& a, const std::string& b, double T) {
        return contraction_constant({on(a, T), on(b, T), ScalarField::constant(0.0, {-T, T}), T});
      },
      py::arg("a"), py::arg("b"), py::arg("T"));

  // kernels
  m.def("green_ivp", &green_ivp, py::arg("a"), py::arg("b"));
  m.def("green_ivp_assembled", &green_ivp_assembled, py::arg("a"), py::arg("b"));
  m.def("harmonic_periodic_green", &harmonic_periodic_green, py::arg("mu"), py::arg("T"));
  m.def("green_bvp_constant", &green_bvp_constant, py::arg("a"), py::arg("b"), py::arg("T"));
  m.def("green_bvp_c3", &green_bvp_c3, py::arg("a"), py::arg("T"));
  m.def(
      "green_bvp",
      [](const std::string& a, const std::string& b, double T) {
        return green_bvp_nonconstant({on(a, T), on(b, T), ScalarField::constant(0.0, {-T, T}), T});
      },
      py::arg("a"), py::arg("b"), py::arg("T"));
  m.def(
      "green_ode_periodic", [](const std::string& v, double T) { return green_ode_periodic(on(v, T), T); },
      py::arg("v"), py::arg("T"));

  // solvers: coefficients and forcing as expression text, solution sampled at ts
  m.def(
      "solve_ivp",
      [](double a, double b, const std::string& h, double t0, double c, const std::vector<double>& ts, double R) {
        return sample(solve_ivp({a, b, t0, c, on(h, R)}), ts);
      },
      py::arg("a"), py::arg("b"), py::arg("h"), py::arg("t0"), py::arg("c"), py::arg("ts"), py::arg("R") = 1.0);
  m.def(
      "oracle_ivp",
      [](double a, double b, const std::string& h, double t0, double c, const std::vector<double>& ts, double R) {
        return sample(oracle_ivp({a, b, t0, c, on(h, R)}, Grid::uniform(R, 4001)), ts);
      },
      py::arg("a"), py::arg("b"), py::arg("h"), py::arg("t0"), py::arg("c"), py::arg("ts"), py::arg("R") = 1.0);
  m.def(
      "solve_bvp",
      [](const std::string& a, const std::string& b, const std::string& h, double T, const std::vector<double>& ts,
         bool force, double tol) {
        PicardOptions po;
        po.force = force;
        po.tol = tol;
        BvpSolution s = solve_periodic({on(a, T), on(b, T), on(h, T), T}, po);
        py::dict out;
        out["u"] = sample(s.u, ts);
        out["case"] = to_string(s.tag);
        out["method"] = s.method;
        out["iterations"] = s.iterations;
        out["contraction"] = s.contraction;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("h"), py::arg("T"), py::arg("ts"), py::arg("force") = false,
      py::arg("tol") = 1e-10);
  m.def(
      "oracle_bvp_shooting",
      [](const std::string& a, const std::string& b, const std::string& h, double T, const std::vector<double>& ts) {
        return sample(oracle_bvp_shooting({on(a, T), on(b, T), on(h, T), T}), ts);
      },
      py::arg("a"), py::arg("b"), py::arg("h"), py::arg("T"), py::arg("ts"));
  m.def(
      "resonant_family",
      [](const std::string& a, const std::string& b, const std::string& h, double T, double c,
         const std::vector<double>& ts) {
        BvpProblem p{on(a, T), on(b, T), on(h, T), T};
        Case k = classify_bvp(p).kind;
        if (k != Case::C4p && k != Case::C5p) fail(ErrorKind::WrongCase, "problem is not resonant");
        SolutionFamily f = k == Case::C4p ? solve_resonant_c4(p) : solve_resonant_c5(p);
        py::dict out;
        out["solvable"] = f.solvable;
        out["obstruction"] = f.obstruction;
        out["u"] = sample(f.member(c), ts);
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("h"), py::arg("T"), py::arg("c"), py::arg("ts"));

  m.def(
      "constant_sign_check",
      [](const std::string& a, const std::string& b, double T) {
        SignVerdict v = constant_sign_check({on(a, T), on(b, T), ScalarField::constant(0.0, {-T, T}), T});
        py::dict out;
        out["sign"] = sign_name(v.sign);
        out["threshold"] = v.threshold;
        out["abs_AT"] = v.abs_AT;
        out["sampled_min"] = v.sampled_min;
        out["sampled_max"] = v.sampled_max;
        out["consistent"] = v.consistent;
        out["reason"] = v.reason;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("T"));

  m.def(
      "verify_involution",
      [](const std::string& phi, double lo, double hi) {
        return verify_involution(ScalarField::from_text(phi), {lo, hi}).ok;
      },
      py::arg("phi"), py::arg("lo"), py::arg("hi"));
}
