#pragma once

#include "operadiff/free_monad.hpp"
#include "operadiff/report.hpp"

#include <memory>
#include <mutex>

namespace operadiff {

// Values of one generating operation on tuples of carrier basis indices.
// Missing tuples evaluate to zero.
using GeneratorTable = std::map<std::vector<std::size_t>, Vector>;

// Finite-dimensional P-algebra given by the values of the operad's
// generating operations. Other operations are evaluated through their
// generator trees.
class PAlgebra {
 public:
  PAlgebra(OperadPtr P, BasedModule carrier, std::vector<GeneratorTable> tables);
  PAlgebra(const PAlgebra& o) : P_(o.P_), carrier_(o.carrier_), tables_(o.tables_) {}

  const Operad& operad() const { return *P_; }
  OperadPtr operad_ptr() const { return P_; }
  const BasedModule& carrier() const { return carrier_; }
  std::size_t dim() const { return carrier_.dim(); }
  const std::vector<GeneratorTable>& tables() const { return tables_; }

  Vector apply_generator(std::size_t g, const std::vector<Vector>& args) const;
  Vector evaluate(const OperadElement& mu, const std::vector<Vector>& args) const;
  // Basis operation i of P(n) on basis vectors, memoized.
  Vector evaluate_basis(std::size_t n, std::size_t i, const std::vector<std::size_t>& args) const;
  // The structure map S(P, A) -> A.
  Vector theta(const FreeElement& e) const;

 private:
  Vector eval_tree(const OpTree& t, const std::vector<Vector>& args) const;

  OperadPtr P_;
  BasedModule carrier_;
  std::vector<GeneratorTable> tables_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<std::size_t>, Vector> cache_;
};

using AlgebraPtr = std::shared_ptr<const PAlgebra>;

// Unital (commutative or associative) algebra from a multiplication table.
PAlgebra make_unital_algebra(OperadPtr P, BasedModule basis, const std::vector<std::vector<Vector>>& mult,
                             const Vector& unit);
// Lie algebra from a bracket table.
PAlgebra make_lie_algebra(OperadPtr lie, BasedModule basis, const std::vector<std::vector<Vector>>& bracket);

// Test algebras.
PAlgebra truncated_polynomial_algebra(std::size_t n);  // Q[x]/(x^n), basis 1, x, .., x^(n-1)
PAlgebra upper_triangular_algebra();                   // 2x2 upper triangular matrices, basis e11, e12, e22
PAlgebra lie_he_algebra();                             // [h, e] = 2e
PAlgebra abelian_lie_algebra(std::size_t dim);
PAlgebra zero_algebra(OperadPtr P);

Report check_algebra_axioms(const PAlgebra& A, std::size_t arity_bound = 4);
// Checks f(mu(a..)) = mu(f a..) for basis operations of arity <= arity_bound
// (arity 0 included) on basis tuples.
Report check_morphism(const PAlgebra& A, const PAlgebra& B, const LinearMap& f, std::size_t arity_bound = 4);
// Smallest arity bound that covers every generating operation.
std::size_t generator_arity(const Operad& P);

// A x A^n with mu((a_i, b_i^1..b_i^n)_i) = (mu(a), sum_i mu(a..b_i^j..a))_j.
PAlgebra tangent_power(const PAlgebra& A, std::size_t n);
PAlgebra tangent_bundle(const PAlgebra& A);
// T(A) with generator tables computed as (theta x theta) o lambda.
PAlgebra tangent_bundle_from_monad(const PAlgebra& A);
// Compares two structures on the same carrier on all basis operations.
Report compare_algebras(const PAlgebra& A, const PAlgebra& B, std::size_t arity_bound);

// Structure maps on the carriers, for dim A = k. T2(A) = T(T(A)) has blocks
// (a, b, c, d) = ((a, b), (c, d)); A x A^2 has blocks (a, b1, b2).
struct TangentMaps {
  LinearMap p, z, s, q1, q2, l, c, n;
};
TangentMaps tangent_maps(std::size_t k);

struct TangentSuiteOptions {
  std::size_t arity_bound = 3;  // for the algebra axioms of T(A), T2(A)
  std::vector<LinearMap> endomorphisms;  // algebra endomorphisms for naturality
};

Report check_tangent_equations(const PAlgebra& A, const TangentMaps& m, const TangentSuiteOptions& opt = {});

// Derivations and vector fields.
bool is_derivation(const PAlgebra& A, const LinearMap& D, std::string* witness = nullptr);
std::vector<LinearMap> derivation_space(const PAlgebra& A);
LinearMap derivation_bracket(const LinearMap& D1, const LinearMap& D2);
// v_D = <1, D>; throws DomainError when D fails the Leibniz rule.
LinearMap vector_field_from_derivation(const PAlgebra& A, const LinearMap& D);
// D_v = pi2 o v; throws DomainError unless v is a section of p and a morphism A -> T(A).
LinearMap derivation_from_vector_field(const PAlgebra& A, const LinearMap& v);
// Lie bracket of vector fields <1, D_v D_w - D_w D_v>.
LinearMap vector_field_bracket(const PAlgebra& A, const LinearMap& v, const LinearMap& w);
std::string render_derivations(const PAlgebra& A, const std::vector<LinearMap>& Ds);

// Differential objects: the operation criterion (mu = 0 off arity one) and
// the monad criterion (alpha = alpha o S(pi2) o d, alpha additive, alpha o S(0) = 0).
struct DifferentialObjectVerdict {
  bool by_operations = false;
  bool by_monad = false;
  std::string witness;
};
DifferentialObjectVerdict check_differential_object_alg(const PAlgebra& A, std::size_t arity_bound = 4);

}  // namespace operadiff
