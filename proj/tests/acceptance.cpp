// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include "operadiff/adjoint.hpp"
#include "operadiff/expression.hpp"
#include "operadiff/ppoly.hpp"
#include "operadiff/spec_file.hpp"
#include "oracles.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace operadiff;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  // Keeps the first failure.
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
  void require(const Report& r) {
    if (r.passed()) return;
    for (const auto& c : r.checks)
      if (!c.passed) {
        require(false, r.subject + ": " + c.name + ": " + c.counterexample);
        return;
      }
  }
};

PresentationBounds bounds(std::size_t d, std::size_t w) {
  PresentationBounds b;
  b.max_degree = d;
  b.max_weight = w;
  return b;
}

LinearMap matrix(std::size_t dom, std::size_t cod, const std::vector<std::vector<long>>& rows) {
  LinearMap f(dom, cod);
  for (std::size_t j = 0; j < dom; ++j) {
    Vector c;
    for (std::size_t i = 0; i < cod; ++i) c.add(i, Scalar(rows[i][j]));
    f.set_column(j, c);
  }
  return f;
}

std::vector<OperadPtr> suite_operads() {
  return {named_operad("com"), named_operad("ass"), named_operad("lie"), named_operad("pointed")};
}

AxiomOptions regime() {
  AxiomOptions opt;
  opt.arity_bound = 4;
  opt.trials = 200;
  opt.seed = 7;
  return opt;
}

struct TestAlgebra {
  std::string name;
  PAlgebra A;
  std::vector<LinearMap> endos;
};

std::vector<TestAlgebra> tangent_cases() {
  return {
      {"Q[x]/x^2", truncated_polynomial_algebra(2), {matrix(2, 2, {{1, 0}, {0, 3}})}},
      {"Q[x]/x^3", truncated_polynomial_algebra(3), {matrix(3, 3, {{1, 0, 0}, {0, 2, 0}, {0, 1, 4}})}},
      {"upper triangular", upper_triangular_algebra(), {matrix(3, 3, {{1, 0, 0}, {-1, 1, 1}, {0, 0, 1}})}},
      {"[h,e]=2e", lie_he_algebra(), {matrix(2, 2, {{1, 0}, {5, 3}})}},
  };
}

// ------------------------------------------------------------------ criteria

Verdict dc_suite() {
  Verdict v;
  for (const auto& P : suite_operads()) v.require(check_dc_axioms(FreeMonad(P), regime()));
  return v;
}

Verdict lambda_suite() {
  Verdict v;
  for (const auto& P : suite_operads()) {
    FreeMonad S(P);
    v.require(check_lambda_axioms(S, regime()));
    v.require(check_lambda_round_trip(S, regime()));
  }
  return v;
}

Verdict monad_suite() {
  Verdict v;
  auto opt = regime();
  opt.trials = 100;
  opt.maps = 100;
  for (const auto& P : suite_operads()) {
    FreeMonad S(P);
    v.require(check_monad_laws(S, opt));
    v.require(check_naturality(S, opt));
  }
  return v;
}

oracle::Poly as_poly(const FreeElement& e, std::size_t n) {
  oracle::Poly p;
  for (const auto& [t, c] : e) {
    std::vector<int> ex(n, 0);
    for (auto x : t.word) ++ex[x];
    p.add(ex, c);
  }
  return p;
}

Verdict com_oracle() {
  Verdict v;
  FreeMonad S(make_com_operad());
  RandomFree R(4);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t k = 1 + R.below(3);
    auto e = R.element(S, k, 5);
    v.require(as_poly(S.diff(e, k), 2 * k) == oracle::poly_total_differential(as_poly(e, k), k),
              "d disagrees with the textbook differential on " + render_free(S.operad(), e, BasedModule::coordinates(k)));
  }
  return v;
}

Verdict tangent_suite() {
  Verdict v;
  for (const auto& c : tangent_cases()) {
    TangentSuiteOptions opt;
    opt.endomorphisms = c.endos;
    v.require(check_tangent_equations(c.A, tangent_maps(c.A.dim()), opt));
    // each structure map, mutated, must be caught
    const auto base = tangent_maps(c.A.dim());
    for (auto field : {&TangentMaps::p, &TangentMaps::z, &TangentMaps::s, &TangentMaps::q1, &TangentMaps::q2,
                       &TangentMaps::l, &TangentMaps::c, &TangentMaps::n}) {
      auto m = base;
      auto& f = m.*field;
      auto last = f.domain_dim() - 1;
      f.set_column(last, f.column(last) + Vector(0));
      auto r = check_tangent_equations(c.A, m);
      bool witnessed = false;
      for (const auto& ch : r.checks) witnessed = witnessed || (!ch.passed && !ch.counterexample.empty());
      v.require(witnessed, c.name + ": a mutated structure map went unnoticed");
    }
  }
  return v;
}

Verdict derivation_solver() {
  Verdict v;
  v.require(derivation_space(truncated_polynomial_algebra(2)).size() == 1, "dim Der(Q[x]/x^2) != 1");
  v.require(derivation_space(truncated_polynomial_algebra(3)).size() == 2, "dim Der(Q[x]/x^3) != 2");
  for (const auto& c : tangent_cases()) {
    auto Ds = derivation_space(c.A);
    for (const auto& D : Ds) {
      std::string w;
      v.require(is_derivation(c.A, D, &w), c.name + ": solver output fails Leibniz: " + w);
    }
    for (const auto& a : Ds)
      for (const auto& b : Ds) {
        v.require(is_derivation(c.A, derivation_bracket(a, b)), c.name + ": commutator is not a derivation");
        for (const auto& e : Ds) {
          auto j = derivation_bracket(a, derivation_bracket(b, e)) + derivation_bracket(b, derivation_bracket(e, a)) +
                   derivation_bracket(e, derivation_bracket(a, b));
          v.require(j == LinearMap::zero(c.A.dim(), c.A.dim()), c.name + ": Jacobi fails");
        }
      }
  }
  return v;
}

Verdict vector_fields() {
  Verdict v;
  for (const auto& c : tangent_cases())
    for (const auto& D : derivation_space(c.A)) {
      auto vf = vector_field_from_derivation(c.A, D);
      v.require(derivation_from_vector_field(c.A, vf) == D, c.name + ": D -> v_D -> D is not the identity");
      auto D2 = derivation_from_vector_field(c.A, vf);
      v.require(vector_field_from_derivation(c.A, D2) == vf, c.name + ": v -> D_v -> v is not the identity");
    }
  return v;
}

Verdict tau_iso() {
  Verdict v;
  struct Case {
    std::string name;
    std::size_t k, w;
    std::size_t adjunction_weight;  // S(Ass, 2) at weight 4 takes minutes through T(T°)
    std::size_t (*oracle)(std::size_t, std::size_t, std::size_t);
  };
  for (const auto& c : std::vector<Case>{{"com", 1, 4, 4, oracle::com_pair_cell},
                                         {"com", 2, 4, 4, oracle::com_pair_cell},
                                         {"ass", 1, 4, 4, oracle::ass_pair_cell},
                                         {"ass", 2, 4, 3, oracle::ass_pair_cell},
                                         {"lie", 2, 3, 3, oracle::lie_pair_cell}}) {
    auto P = named_operad(c.name);
    auto t = check_tau(P, c.k, c.w, 7, 100);
    v.require(t.report);
    for (const auto& [key, d] : t.presentation_dims)
      v.require(d == c.oracle(c.k, key.first, key.second),
                c.name + ": cell (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                    ") differs from the oracle");
    v.require(check_adjunction(free_algebra_truncated(P, c.k, c.adjunction_weight), bounds(1, c.adjunction_weight)));
  }
  return v;
}

Verdict backend() {
  Verdict v;
  // pointed: T°(M) = M x M
  auto P = named_operad("pointed");
  auto M = pointed_algebra(P, BasedModule({"u", "tu"}), {LinearMap::identity(2), matrix(2, 2, {{0, 0}, {1, 0}})});
  v.require(backend_agreement(ungraded(M), bounds(2, 0)));
  // Com: hand-computed Sym_A(Omega_A).
  //   Q[x]/x^2: Omega = Q dx (2x dx = 0), cells 1 at (0,0), (0,1), (d,d).
  //   Q[x]/x^3: Omega = span(dx, x dx) (3x^2 dx = 0), cells 1 at (0,0..2), (d,d), (d,d+1).
  auto hand = [](std::size_t n, std::size_t d, std::size_t w) -> std::size_t {
    if (d == 0) return w < n ? 1 : 0;
    return w >= d && w <= d + n - 2 ? 1 : 0;
  };
  for (std::size_t n : {2, 3}) {
    auto A = graded_truncated_polynomial(n);
    auto b = bounds(3, 2 * n);
    v.require(backend_agreement(A, b));
    auto T = adjoint_bundle(A, b);
    for (const auto& [key, d] : T.presentation->cell_dims())
      v.require(d == hand(n, key.first, key.second), "Q[x]/x^" + std::to_string(n) + ": cell (" +
                                                         std::to_string(key.first) + ", " + std::to_string(key.second) +
                                                         ") differs from the hand computation");
  }
  return v;
}

Verdict diff_objects() {
  Verdict v;
  std::vector<std::pair<std::string, PAlgebra>> algebras{
      {"Q[x]/x^2", truncated_polynomial_algebra(2)}, {"Q[x]/x^3", truncated_polynomial_algebra(3)},
      {"upper triangular", upper_triangular_algebra()}, {"[h,e]=2e", lie_he_algebra()},
      {"abelian Lie", abelian_lie_algebra(2)},          {"zero", zero_algebra(make_com_operad())}};
  for (const auto& [name, A] : algebras) {
    auto r = check_differential_object_alg(A);
    v.require(r.by_operations == r.by_monad, name + ": the two criteria disagree");
    if (name == "[h,e]=2e") v.require(!r.by_operations, "nonabelian Lie algebra accepted");
    if (name == "abelian Lie") v.require(r.by_operations, "abelian Lie algebra rejected");
  }
  for (const auto& name : {"com", "ass", "lie"})
    v.require(check_free_differential_object(named_operad(name), std::string(name) == "lie" ? 2 : 1, 3));
  return v;
}

Verdict cdc() {
  Verdict v;
  for (const auto& P : suite_operads()) {
    CdcOptions opt;
    opt.trials = 100;
    v.require(check_cdc_properties(FreeMonad(P), opt));
  }
  FreeMonad com(make_com_operad());
  PPolyMap sq{1, 1, {com.apply(OperadElement::basis(2, 0), std::vector<FreeElement>{com.unit(Var{0}), com.unit(Var{0})})}};
  auto lhs = ppoly_diff(com, ppoly_compose(com, sq, sq));
  auto rhs = ppoly_compose(com, ppoly_diff(com, sq), ppoly_pair(PPolyMap{2, 1, sq.components}, ppoly_diff(com, sq)));
  // 4 x^3 dx: four copies of x, one of dx
  FreeElement expected;
  expected.add(com.canonicalize(OperadElement::basis(4, 0), std::vector<Var>{0, 0, 0, 1}), Scalar(4));
  v.require(lhs.components[0] == expected, "D[g o f] != 4x^3 dx");
  v.require(rhs.components[0] == expected, "D[g] o <f, D[f]> != 4x^3 dx");
  return v;
}

// stdout and exit status of a shell command
std::pair<std::string, int> shell(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {"", -1};
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

Verdict cli() {
  Verdict v;
  const char* env = std::getenv("OPERADIFF_CLI");
  std::string bin = env ? env : "build/operadiff";
  struct Case {
    std::string dir, args, expected;
  };
  for (const auto& c : std::vector<Case>{
           {".", "differentiate --operad com \"x^2\"", "2*x*dx\n"},
           {".", "check-dc --operad lie --arity 4 --trials 200 --seed 7", ""},
           {"examples_spec", "derivations --algebra dualnumbers.toml", "dim Der = 1; basis: D(x)=x\n"},
       }) {
    auto [out, code] = shell("cd " + c.dir + " && '" + bin + "' " + c.args + " 2>&1");
    v.require(code == 0, "operadiff " + c.args + " exited with " + std::to_string(code));
    if (c.expected.empty())
      v.require(out.find("FAIL") == std::string::npos && out.find("PASS DC.1") != std::string::npos,
                "operadiff " + c.args + " did not report a pass");
    else
      v.require(out == c.expected, "operadiff " + c.args + " printed " + out);
  }
  BasedModule V({"x", "y", "z", "dx", "d'y"});
  for (const auto& name : {"com", "ass", "lie", "pointed"}) {
    FreeMonad S(named_operad(name));
    RandomFree R(12);
    for (int i = 0; i < 200; ++i) {
      auto e = R.element(S, V.dim(), 4);
      auto text = render_free(S.operad(), e, V);
      v.require(parse_expression(S, text, V) == e, std::string(name) + ": round trip fails on " + text);
    }
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
    double budget;  // seconds; 0 for none
  };
  const std::vector<Criterion> criteria{
      {1, "DC axiom suite", dc_suite, 60},
      {2, "lambda / tangent-monad suite and d-from-lambda round trip", lambda_suite, 0},
      {3, "monad laws and naturality", monad_suite, 30},
      {4, "Com differential against the textbook differentiator", com_oracle, 0},
      {5, "tangent equations and mutation detection", tangent_suite, 0},
      {6, "derivation solver", derivation_solver, 0},
      {7, "vector-field correspondence", vector_fields, 0},
      {8, "tau isomorphism and triangle identities", tau_iso, 0},
      {9, "generic T° engine against closed forms", backend, 0},
      {10, "differential objects", diff_objects, 0},
      {11, "differential category properties", cdc, 0},
      {12, "CLI invocations and expression round trip", cli, 0},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget > 0 && secs > c.budget && v.ok) {
      v.ok = false;
      v.detail = "took longer than " + std::to_string(static_cast<int>(c.budget)) + " s";
    }
    std::ostringstream line;
    line << (v.ok ? "PASS" : "FAIL") << " " << std::setw(2) << c.id << ". " << c.name << "  (" << std::fixed
         << std::setprecision(2) << secs << " s)";
    if (!v.ok) line << "\n       " << v.detail;
    std::cout << line.str() << std::endl;
    failures += v.ok ? 0 : 1;
  }
  return failures;
}
