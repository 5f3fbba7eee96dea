#include <doctest.h>

#include "operadiff/palgebra.hpp"

#include <random>

using namespace operadiff;

namespace {

LinearMap matrix(std::size_t dom, std::size_t cod, const std::vector<std::vector<long>>& rows) {
  LinearMap f(dom, cod);
  for (std::size_t j = 0; j < dom; ++j) {
    Vector c;
    for (std::size_t i = 0; i < cod; ++i) c.add(i, Scalar(rows[i][j]));
    f.set_column(j, c);
  }
  return f;
}

struct Case {
  std::string label;
  PAlgebra A;
  std::vector<LinearMap> endos;
};

std::vector<Case> standard_cases() {
  std::vector<Case> out;
  out.push_back({"dual numbers", truncated_polynomial_algebra(2), {matrix(2, 2, {{1, 0}, {0, 3}})}});
  out.push_back({"Q[x]/x^3", truncated_polynomial_algebra(3), {matrix(3, 3, {{1, 0, 0}, {0, 2, 0}, {0, 1, 4}})}});
  out.push_back({"upper triangular", upper_triangular_algebra(), {matrix(3, 3, {{1, 0, 0}, {-1, 1, 1}, {0, 0, 1}})}});
  out.push_back({"Lie he", lie_he_algebra(), {matrix(2, 2, {{1, 0}, {5, 3}})}});
  return out;
}

Scalar small(std::mt19937_64& rng) { return Scalar(static_cast<long>(rng() % 7) - 3); }

// 1 + V + W with V.V in W and every other product of non-units zero.
PAlgebra random_graded_commutative(std::mt19937_64& rng, std::size_t v, std::size_t w) {
  const std::size_t n = 1 + v + w;
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i) mult[0][i] = mult[i][0] = Vector(i);
  for (std::size_t i = 1; i <= v; ++i)
    for (std::size_t j = i; j <= v; ++j) {
      Vector c;
      for (std::size_t o = 0; o < w; ++o) c.add(1 + v + o, small(rng));
      mult[i][j] = mult[j][i] = c;
    }
  return make_unital_algebra(make_com_operad(), BasedModule::coordinates(n, "u"), mult, Vector(0));
}

// V + W with [V, V] in W, possibly zero.
PAlgebra random_two_step_lie(std::mt19937_64& rng, std::size_t v, std::size_t w, bool abelian) {
  const std::size_t n = v + w;
  std::vector<std::vector<Vector>> br(n, std::vector<Vector>(n));
  if (!abelian)
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = i + 1; j < v; ++j) {
        Vector c;
        for (std::size_t o = 0; o < w; ++o) c.add(v + o, small(rng));
        br[i][j] = c;
        br[j][i] = -c;
      }
  return make_lie_algebra(make_lie_operad(), BasedModule::coordinates(n, "g"), br);
}

LinearMap mutate(const LinearMap& f) {
  auto g = f;
  auto last = f.domain_dim() - 1;
  g.set_column(last, f.column(last) + Vector(0));
  return g;
}

}  // namespace

TEST_CASE("test algebras satisfy the axioms") {
  for (const auto& c : standard_cases()) {
    auto r = check_algebra_axioms(c.A, 4);
    INFO(c.label << "\n" << r.render());
    CHECK(r.passed());
  }
  auto he = lie_he_algebra();
  CHECK(he.apply_generator(0, {Vector(0), Vector(1)}) == Scalar(2) * Vector(1));
  CHECK(he.apply_generator(0, {Vector(0), Vector(0)}).is_zero());
  CHECK(abelian_lie_algebra(2).apply_generator(0, {Vector(0), Vector(1)}).is_zero());
  // x*x in the dual numbers, and the commutative product of x with itself in Q[x]/x^3
  CHECK(truncated_polynomial_algebra(2).evaluate_basis(2, 0, {1, 1}).is_zero());
  CHECK(truncated_polynomial_algebra(3).evaluate_basis(2, 0, {1, 1}) == Vector(2));
  CHECK(check_algebra_axioms(zero_algebra(make_ass_operad())).passed());
}

TEST_CASE("broken tables fail the axioms") {
  std::vector<std::vector<Vector>> br(2, std::vector<Vector>(2));
  br[0][1] = Scalar(2) * Vector(1);
  br[1][0] = Scalar(2) * Vector(1);  // symmetric bracket
  auto bad = make_lie_algebra(make_lie_operad(), BasedModule({"h", "e"}), br);
  auto r = check_algebra_axioms(bad, 3);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.find("equivariance")->counterexample.empty());

  // x*x = y, y*x = 0 but x*y = x: not associative
  std::vector<std::vector<Vector>> m(3, std::vector<Vector>(3));
  for (std::size_t i = 0; i < 3; ++i) m[0][i] = m[i][0] = Vector(i);
  m[1][1] = Vector(2);
  m[1][2] = Vector(1);
  auto nonassoc = make_unital_algebra(make_ass_operad(), BasedModule({"1", "x", "y"}), m, Vector(0));
  auto r2 = check_algebra_axioms(nonassoc, 3);
  CHECK_FALSE(r2.find("composition")->passed);
}

TEST_CASE("tangent bundle structure") {
  auto A = truncated_polynomial_algebra(3);
  auto T = tangent_bundle(A);
  REQUIRE(T.carrier().names() == std::vector<std::string>{"1", "x", "x^2", "d1", "dx", "dx^2"});
  // (x, 0) * (0, dx) = (0, x dx)
  CHECK(T.evaluate_basis(2, 0, {1, 4}) == Vector(5));
  CHECK(T.evaluate_basis(2, 0, {4, 4}).is_zero());
  CHECK(T.evaluate_basis(0, 0, {}) == Vector(0));
  CHECK(T.evaluate_basis(3, 0, {1, 1, 3}) == Vector(5));

  auto he = tangent_bundle(lie_he_algebra());
  CHECK(he.apply_generator(0, {Vector(0), Vector(3)}) == Scalar(2) * Vector(3));
  CHECK(he.apply_generator(0, {Vector(2), Vector(3)}).is_zero());

  for (const auto& c : standard_cases()) {
    auto r = compare_algebras(tangent_bundle(c.A), tangent_bundle_from_monad(c.A), 4);
    INFO(c.label << "\n" << r.render());
    CHECK(r.passed());
  }
  auto TT = tangent_bundle(tangent_bundle(truncated_polynomial_algebra(2)));
  CHECK(TT.dim() == 8);
  CHECK(check_algebra_axioms(TT, 3).passed());
}

TEST_CASE("tangent structure equations") {
  for (const auto& c : standard_cases()) {
    TangentSuiteOptions opt;
    opt.endomorphisms = c.endos;
    auto r = check_tangent_equations(c.A, tangent_maps(c.A.dim()), opt);
    INFO(c.label << "\n" << r.render());
    CHECK(r.passed());
  }
}

TEST_CASE("each mutated structure map is caught") {
  auto A = truncated_polynomial_algebra(2);
  const auto base = tangent_maps(A.dim());
  std::vector<std::pair<std::string, LinearMap TangentMaps::*>> fields{
      {"p", &TangentMaps::p},   {"z", &TangentMaps::z}, {"s", &TangentMaps::s}, {"q1", &TangentMaps::q1},
      {"q2", &TangentMaps::q2}, {"l", &TangentMaps::l}, {"c", &TangentMaps::c}, {"n", &TangentMaps::n}};
  for (const auto& [name, field] : fields) {
    auto m = base;
    m.*field = mutate(base.*field);
    auto r = check_tangent_equations(A, m);
    INFO("mutated " << name);
    CHECK_FALSE(r.passed());
  }
  // a non-morphism endomorphism is reported
  TangentSuiteOptions opt;
  opt.endomorphisms = {matrix(2, 2, {{1, 1}, {0, 1}})};
  CHECK_FALSE(check_tangent_equations(A, base, opt).passed());
}

TEST_CASE("derivation spaces") {
  auto dual = truncated_polynomial_algebra(2);
  auto D = derivation_space(dual);
  CHECK(render_derivations(dual, D) == "dim Der = 1; basis: D(x)=x");
  // Q[x]/x^n has derivations D(x) in (x): dimension n - 1
  for (std::size_t n = 1; n <= 5; ++n) CHECK(derivation_space(truncated_polynomial_algebra(n)).size() == n - 1);
  // all inner for these two
  CHECK(derivation_space(upper_triangular_algebra()).size() == 2);
  CHECK(derivation_space(lie_he_algebra()).size() == 2);
  // abelian: all of gl(V)
  CHECK(derivation_space(abelian_lie_algebra(2)).size() == 4);
  CHECK(derivation_space(zero_algebra(make_com_operad())).empty());

  for (const auto& c : standard_cases()) {
    auto Ds = derivation_space(c.A);
    for (const auto& d : Ds) CHECK(is_derivation(c.A, d));
    for (const auto& a : Ds)
      for (const auto& b : Ds) CHECK(is_derivation(c.A, derivation_bracket(a, b)));
    for (const auto& a : Ds)
      for (const auto& b : Ds)
        for (const auto& e : Ds) {
          auto j = derivation_bracket(a, derivation_bracket(b, e)) + derivation_bracket(b, derivation_bracket(e, a)) +
                   derivation_bracket(e, derivation_bracket(a, b));
          CHECK(j == LinearMap::zero(c.A.dim(), c.A.dim()));
        }
  }
}

TEST_CASE("derivations and vector fields correspond") {
  for (const auto& c : standard_cases()) {
    auto Ds = derivation_space(c.A);
    for (const auto& d : Ds) {
      auto v = vector_field_from_derivation(c.A, d);
      CHECK(check_morphism(c.A, tangent_bundle(c.A), v).passed());
      CHECK(derivation_from_vector_field(c.A, v) == d);
    }
    for (const auto& a : Ds)
      for (const auto& b : Ds) {
        auto va = vector_field_from_derivation(c.A, a), vb = vector_field_from_derivation(c.A, b);
        CHECK(vector_field_bracket(c.A, va, vb) == vector_field_from_derivation(c.A, derivation_bracket(a, b)));
      }
  }
  auto dual = truncated_polynomial_algebra(2);
  auto notder = matrix(2, 2, {{0, 0}, {1, 0}});  // 1 -> x
  std::string why;
  CHECK_FALSE(is_derivation(dual, notder, &why));
  CHECK_FALSE(why.empty());
  CHECK_THROWS_AS(vector_field_from_derivation(dual, notder), DomainError);
  auto notsection = matrix(2, 4, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
  CHECK_THROWS_AS(derivation_from_vector_field(dual, notsection), DomainError);
}

TEST_CASE("differential objects among algebras") {
  auto abelian = check_differential_object_alg(abelian_lie_algebra(2));
  CHECK(abelian.by_operations);
  CHECK(abelian.by_monad);
  auto dual = check_differential_object_alg(truncated_polynomial_algebra(2));
  CHECK_FALSE(dual.by_operations);
  CHECK_FALSE(dual.by_monad);
  CHECK_FALSE(dual.witness.empty());
  auto zero = check_differential_object_alg(zero_algebra(make_com_operad()));
  CHECK(zero.by_operations);
  CHECK(zero.by_monad);
  auto he = check_differential_object_alg(lie_he_algebra());
  CHECK_FALSE(he.by_operations);
  CHECK_FALSE(he.by_monad);

  std::mt19937_64 rng(11);
  for (int t = 0; t < 12; ++t) {
    auto lie = random_two_step_lie(rng, 2 + t % 2, 1, t % 3 == 0);
    auto v = check_differential_object_alg(lie, 3);
    CHECK(v.by_operations == v.by_monad);
    CHECK(check_algebra_axioms(lie, 3).passed());
    auto com = random_graded_commutative(rng, 1 + t % 2, 1);
    auto w = check_differential_object_alg(com, 3);
    CHECK(w.by_operations == w.by_monad);
    CHECK(check_algebra_axioms(com, 3).passed());
  }
}
