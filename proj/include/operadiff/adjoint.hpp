#pragma once

#include "operadiff/presentation.hpp"

namespace operadiff {

// ---------------------------------------------------------------- building blocks

// S(P, V) for dim V = k truncated to arity <= w: products of higher arity are
// dropped. Weight = arity.
GradedAlgebra free_algebra_truncated(OperadPtr P, std::size_t k, std::size_t w);
// A x A with the Leibniz structure; (0, b) keeps the weight of b.
GradedAlgebra graded_tangent_bundle(const GradedAlgebra& A);
// P(0) with mu(c1..cn) = mu o (c1..cn). Zero algebra when P(0) = 0.
PAlgebra initial_algebra(OperadPtr P);

// P(0) x M where operations with one M input act through P(1): basis element
// b of P(1) acts by action[b]. Empty action means P(1) acts by scalars.
AlgebraModule p0_module(OperadPtr P, std::size_t dim, std::vector<LinearMap> action = {});
// Commutative square-zero extension A x M; action[i] multiplies by basis i of A.
// Module basis names default to m1, m2, ..
AlgebraModule com_module(const GradedAlgebra& A, const std::vector<LinearMap>& action,
                         const std::vector<std::size_t>& module_weight, std::vector<std::string> names = {});
// Algebra over a pointed operad: basis element i of the coefficient algebra acts by action[i].
PAlgebra pointed_algebra(OperadPtr P, BasedModule carrier, const std::vector<LinearMap>& action);
// M x N over a pointed operad (all operations unary, so no mixing).
AlgebraModule pointed_extension(const PAlgebra& M, const PAlgebra& N);

// ---------------------------------------------------------------- closed forms

// Sym_A(Omega_A) for a commutative algebra, by direct linear algebra on
// A (x) Sym(dA) modulo a'(d(bc) - b dc - c db)m. Cell (k, w): k d-factors, total weight w.
CellTable sym_kahler_dims(const GradedAlgebra& A, std::size_t max_degree, std::size_t max_weight);
// Omega_A as a commutative A-module (the extension A x Omega_A).
AlgebraModule kahler_module(const GradedAlgebra& A);

struct KahlerResult {
  PresentationPtr presentation;
  CellTable dims;  // d-degree 1 cells
  bool exact = false;
};
// Omega_A as the degree-one part of the T° relations. Exact when a closed form
// (commutative or pointed) agrees.
KahlerResult kahler_truncated(const GradedAlgebra& A, std::size_t max_weight);

// T°(A) with generator views a and d(a).
struct AdjointBundle {
  GradedAlgebra base;
  PresentationPtr presentation;

  FreeElement point(const Vector& a) const { return presentation->lift(0, a); }
  FreeElement d(const Vector& a) const { return presentation->lift(1, a); }
};
AdjointBundle adjoint_bundle(const GradedAlgebra& A, PresentationBounds b = {});
// d(mu(a..)) - sum mu(.. d a_i ..) vanishes for basis operations up to arity_bound.
Report check_d_derivation(const AdjointBundle& T, std::size_t arity_bound = 3);

// Generic engine against the commutative and pointed closed forms.
Report backend_agreement(const GradedAlgebra& A, PresentationBounds b = {});

// ---------------------------------------------------------------- free algebras

// Cells of S(P, V x V): terms of arity w with exactly d variables from the second copy.
CellTable free_pair_dims(const FreeMonad& S, std::size_t k, std::size_t max_degree, std::size_t max_weight);

struct TauResult {
  Report report;
  CellTable presentation_dims, free_dims;
};
// T°(S(P,V)) -> S(P, V x V), letters t -> t and d t -> partial(t), on the cells
// of weight <= w: well-defined, bijective per cell, and multiplicative on
// random products of cell representatives.
TauResult check_tau(OperadPtr P, std::size_t k, std::size_t w, std::uint64_t seed = 1, std::size_t samples = 100);

// ---------------------------------------------------------------- adjunction

// eta_A: A -> T(T°(A)), a -> (a, d a), into the materialized cells.
LinearMap adjunction_unit(const GradedAlgebra& A, const Materialized& TA);
// eps_B: T°(T B) -> B, (a, b) -> a and d(a, b) -> b. TB must be weil(graded_tangent_bundle(B), tangent).
AlgebraMap adjunction_counit(PresentationPtr TTB, AlgebraPtr B);
// Unit is a morphism, counit is well-defined, and both triangle identities hold.
Report check_adjunction(const GradedAlgebra& A, PresentationBounds b = {});

// f: T°(A) -> B  gives  f_flat: A -> T(B), a -> (f(a), f(d a)).
LinearMap hom_flat(const AlgebraMap& f);
// g: A -> T(B) a morphism gives g_sharp: T°(A) -> B, a -> g1(a), d a -> g2(a).
// Throws DomainError when g is not a morphism.
AlgebraMap hom_sharp(PresentationPtr TA, AlgebraPtr B, const LinearMap& g);

// ---------------------------------------------------------------- structure maps

// Label maps: entry [L] lists the image labels of d_L(a) with coefficients.
using LabelImages = std::vector<std::vector<std::pair<unsigned, Scalar>>>;

// p°: A -> T°A, z°: T°A -> A, s°, q1°, q2°: T°A -> T°2A, n°: T°A -> T°A,
// l°: T°T°A -> T°A, c°: T°T°A -> T°T°A.
struct AdjointTangentMaps {
  LabelImages p, z, s, q1, q2, n, l, c;
};
AdjointTangentMaps adjoint_tangent_maps();

struct AdjointSuiteOptions {
  PresentationBounds bounds;
  std::vector<LinearMap> endomorphisms;
};
// Well-definedness of every map and the dual tangent equations, on letters.
Report check_adjoint_tangent_equations(const GradedAlgebra& A, const AdjointTangentMaps& m,
                                       const AdjointSuiteOptions& opt = {});

// ---------------------------------------------------------------- vector fields

// v_sharp: T°A -> A, a -> a, d a -> D_v(a). Throws DomainError for invalid v.
AlgebraMap adjoint_vf_sharp(PresentationPtr TA, AlgebraPtr A, const LinearMap& v);
// The same map as eps_A o T°(v).
AlgebraMap adjoint_vf_sharp_via_counit(PresentationPtr TA, AlgebraPtr A, const LinearMap& v);
// w_flat = T(w) o eta: a -> (w(a), w(d a)). Throws DomainError unless w is a
// well-defined map fixing the point letters.
LinearMap adjoint_vf_flat(const AlgebraMap& w);

// ---------------------------------------------------------------- differential objects

// The equalities between zeta°: A -> P(0) and l°: T°A -> A on generators of
// the truncated free algebra, and well-definedness of l°. literal_lift uses
// l°(d(mu; v)) = (mu; v) at every arity instead of arity one only.
Report check_free_differential_object(OperadPtr P, std::size_t k, std::size_t w, bool literal_lift = false);
// Free_{P(0)}(M) materialized up to d-degree max_degree with zeta° killing M
// and l° stripping one d; same equalities.
Report diff_object_from_p0_module(const AlgebraModule& M, std::size_t max_degree = 2);

}  // namespace operadiff
