#include <doctest.h>

#include "operadiff/cli.hpp"

#include <json.hpp>

#include <sstream>

using namespace operadiff;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string spec(const char* f) { return std::string(OPERADIFF_SOURCE_DIR) + "/examples_spec/" + f; }

}  // namespace

TEST_CASE("documented invocations") {
  auto d = run({"differentiate", "--operad", "com", "x^2"});
  CHECK(d.code == 0);
  CHECK(d.out == "2*x*dx\n");
  auto dc = run({"check-dc", "--operad", "lie", "--arity", "4", "--trials", "200", "--seed", "7"});
  CHECK(dc.code == 0);
  CHECK(dc.out.find("FAIL") == std::string::npos);
  CHECK(dc.out.find("PASS DC.N") != std::string::npos);
  auto der = run({"derivations", "--algebra", spec("dualnumbers.toml")});
  CHECK(der.code == 0);
  CHECK(der.out == "dim Der = 1; basis: D(x)=x\n");
}

TEST_CASE("computations") {
  CHECK(run({"differentiate", "--operad", "ass", "x*y"}).out == "x*dy + dx*y\n");
  CHECK(run({"differentiate", "--operad", "lie", "[x,[x,y]]"}).code == 0);
  CHECK(run({"compose", "--operad", "lie", "--f", "[x,y]; x", "--g", "[a,b]"}).code == 0);
  auto c = run({"compose", "--operad", "com", "--f", "x^2", "--g", "y^2"});
  CHECK(c.code == 0);
  CHECK(c.out ==
        "g o f = x^4\n"
        "D[g o f] = 4*x^3*dx\n"
        "D[g] o <f o pi1, D[f]> = 4*x^3*dx\n");
  CHECK(run({"derivations", "--algebra", spec("cubic.toml")}).out.rfind("dim Der = 2", 0) == 0);
  auto k = run({"kahler", "--algebra", spec("dualnumbers.toml")});
  CHECK(k.code == 0);
  CHECK(k.out.rfind("dim Omega = 1 ", 0) == 0);
  auto lie = run({"diff-object", "--algebra", spec("lie_he.toml")});
  CHECK(lie.out.rfind("differential object: no", 0) == 0);
}

TEST_CASE("check commands") {
  for (std::vector<std::string> args : {
           std::vector<std::string>{"check-operad", "--operad", "ass", "--arity", "3"},
           {"check-operad", "--spec", spec("com_truncated.toml")},
           {"check-lambda", "--operad", "com", "--trials", "20", "--arity", "3"},
           {"check-algebra", "--algebra", spec("upper_triangular.toml")},
           {"tangent-check", "--algebra", spec("dualnumbers.toml")},
           {"adjoint-tangent", "--algebra", spec("dualnumbers.toml")},
           {"check-adjunction", "--algebra", spec("dualnumbers.toml")},
           {"check-adjunction", "--operad", "lie", "--free", "2", "--weight", "3", "--degree", "1"},
           {"diff-object", "--operad", "com", "--free", "1", "--weight", "3"},
           {"diff-object", "--module", spec("p0_module.toml")},
           {"check-cdc", "--operad", "lie", "--trials", "20"},
           {"tangent", "--algebra", spec("lie_he.toml")},
       }) {
    auto r = run(args);
    INFO(args[0] << " " << args.back() << "\n" << r.out << r.err);
    CHECK(r.code == 0);
  }
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"differentiate", "--operad", "octonion", "x"}).code == 2);
  CHECK(run({"differentiate", "--operad", "lie", "x^2"}).code == 2);
  CHECK(run({"derivations", "--algebra", "/nonexistent.toml"}).code == 2);
  CHECK(run({"diff-object", "--module", spec("dual_kahler_module.toml")}).code == 2);
  // axiom gate: violation exits 1 with the failing report
  auto gate = run({"derivations", "--algebra", spec("nonassociative.toml")});
  CHECK(gate.code == 1);
  CHECK(gate.out.find("FAIL composition") != std::string::npos);
  auto mut = run({"--no-verify", "check-algebra", "--algebra", spec("nonassociative.toml")});
  CHECK(mut.code == 1);
  CHECK(mut.out.find("counterexample") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("json reports") {
  auto a = run({"check-dc", "--operad", "ass", "--trials", "30", "--seed", "3", "--json"});
  auto b = run({"--json", "--seed", "3", "check-dc", "--operad", "ass", "--trials", "30"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["command"] == "check-dc");
  CHECK(j["operad"] == "ass");
  CHECK(j["seed"] == 3);
  CHECK(j["bounds"]["trials"] == 30);
  REQUIRE(j["checks"].size() == 7);
  CHECK(j["checks"][0]["name"] == "DC.1");
  CHECK(j["checks"][0]["status"] == "pass");
  CHECK_FALSE(j["checks"][0].contains("counterexample"));

  auto f = nlohmann::json::parse(
      run({"--json", "--no-verify", "check-algebra", "--algebra", spec("nonassociative.toml")}).out);
  bool has_counterexample = false;
  for (const auto& c : f["checks"])
    if (c["status"] == "fail") has_counterexample = c.contains("counterexample");
  CHECK(has_counterexample);

  auto d = nlohmann::json::parse(run({"--json", "differentiate", "--operad", "com", "x^2"}).out);
  CHECK(d["result"][0] == "2*x*dx");
}
