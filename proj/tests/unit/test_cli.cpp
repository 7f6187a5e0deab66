#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "spec_io.hpp"

using involute::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / "involute_cli_tests";
  fs::create_directories(d);
  return d;
}

std::string spec_file(const std::string& name, const std::string& json) {
  fs::path p = scratch() / (name + ".json");
  std::ofstream(p) << json;
  return p.string();
}

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("classify reports") {
    auto ivp = spec_file("c_ivp", R"j({"kind":"ivp","a":2,"b":0,"h":"1"})j");
    Run r = run({"classify", "--spec", ivp});
    CHECK(r.code == 0);
    CHECK(r.out == "C1, η = 0.785398\n");

    auto c1 = spec_file("c_c1", R"j({"kind":"bvp","a":"cos(t)","b":"0.5*cos(t)+sin(t)","h":"1","T":1.5707963})j");
    r = run({"classify", "--spec", c1});
    CHECK(r.out == "C1', k=0.5, σ(k)=0.604600, |A(T)|=1 → sign not guaranteed\n");

    auto c4 = spec_file("c_c4", R"j({"kind":"bvp","a":"1","b":"-1","h":"1"})j");
    r = run({"classify", "--spec", c4});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("C4' (resonant)\n", 0) == 0);
  }

  TEST_CASE("exit codes") {
    auto bad = spec_file("bad_expr", R"j({"kind":"bvp","a":"cos(t","b":"0","h":"1"})j");
    Run r = run({"classify", "--spec", bad});
    CHECK(r.code == 5);
    CHECK(r.err.find("offset 5") != std::string::npos);
    CHECK(run({"classify", "--spec", spec_file("bad_json", "{\"kind\": ")}).code == 5);
    CHECK(run({"classify", "--spec", spec_file("a_zero", R"j({"kind":"ivp","a":0,"b":1,"h":"1"})j")}).code == 2);
    CHECK(run({"solve", "--spec", spec_file("res", R"j({"kind":"bvp","a":"1","b":"-1","h":"1"})j")}).code == 3);
    auto gate = spec_file("gate", R"j({"kind":"bvp","a":"1","b":"t+cos(t)","h":"t","T":1})j");
    CHECK(run({"solve", "--spec", gate}).code == 2);
    CHECK(run({"solve", "--spec", gate, "--force", "--n", "9"}).code == 0);
    CHECK(run({"classify", "--spec", (scratch() / "missing.json").string()}).code == 1);
    CHECK(run({"frobnicate"}).code != 0);
  }

  TEST_CASE("zero forcing gives the zero solution") {
    auto z = spec_file("zero", R"j({"kind":"bvp","a":"cos(t)","b":"sin(t)","h":"0","T":1})j");
    Run r = run({"solve", "--spec", z, "--n", "5"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "t,u\n-1,0\n-0.5,0\n0,0\n0.5,0\n1,0\n");
  }

  TEST_CASE("CSV output is atomic and deterministic") {
    auto s = spec_file("det", R"j({"kind":"bvp","a":"0.1","b":"0.1*t+0.05*cos(t)","h":"1","T":1})j");
    fs::path o1 = scratch() / "det1.csv", o2 = scratch() / "det2.csv";
    REQUIRE(run({"solve", "--spec", s, "--n", "33", "--out", o1.string()}).code == 0);
    REQUIRE(run({"solve", "--spec", s, "--n", "33", "--out", o2.string()}).code == 0);
    std::string a = slurp(o1);
    CHECK(a == slurp(o2));
    CHECK(a.rfind("t,u\n", 0) == 0);
    CHECK(a.find("\n0,7.15815386344\n") != std::string::npos);
    CHECK(!fs::exists(o1.string() + ".tmp"));
  }

  TEST_CASE("green grid") {
    auto s = spec_file("g_ivp", R"j({"kind":"ivp","a":1,"b":0,"h":"1"})j");
    Run r = run({"green", "--spec", s, "--n", "3", "--trange", "0:1", "--srange", "-0.5:0.5"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("t,s,G\n", 0) == 0);
    CHECK(r.out.find("1,-0.5,0.479425538604\n") != std::string::npos);
    CHECK(r.out.find("1,0.5,0.87758256189\n") != std::string::npos);
  }

  TEST_CASE("check and sign") {
    auto s = spec_file("chk", R"j({"kind":"bvp","a":"cos(t)","b":"0","h":"1","T":1.5707963267948966})j");
    Run r = run({"check", "--spec", s});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    auto sg = spec_file("sg", R"j({"kind":"bvp","a":"1","b":"0","h":"1","T":0.7})j");
    fs::path grid = scratch() / "sign.csv";
    r = run({"sign", "--spec", sg, "--n", "8", "--out", grid.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("verdict: positive") != std::string::npos);
    CHECK(slurp(grid).rfind("t,s,G,sign\n", 0) == 0);
  }

  TEST_CASE("transform writes a reflection problem") {
    auto s = spec_file("tr", R"j({"kind":"general","a":"1","b":"0","h":"t","d":"1",
      "involution":{"phi":"1/t","dphi":"-1/t^2","domain":[0.5,2]}, "g":"1+t/2","dg":"0.5"})j");
    fs::path o = scratch() / "tr_out.json";
    REQUIRE(run({"transform", "--spec", s, "--out", o.string()}).code == 0);
    auto spec = involute::cli::ProblemSpec::load(o.string());
    CHECK(spec.kind == "general");
    CHECK(spec.h.piecewise());
    // h~(s) = h(f(s)); f(-0.5) = 0.75, f(0.5) = 4/3
    CHECK(spec.h.field()(-0.5) == doctest::Approx(0.75));
    CHECK(spec.h.field()(0.5) == doctest::Approx(4.0 / 3));
    // d~(s) = 1/f'(s), f'(s) = 1/2 on the left
    CHECK(spec.d->field()(-0.5) == doctest::Approx(2.0));
    // the written spec solves the same problem
    Run r = run({"solve", "--spec", o.string(), "--force", "--n", "9"});
    CHECK(r.code == 0);
  }
}
