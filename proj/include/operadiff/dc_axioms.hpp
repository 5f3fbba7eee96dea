#pragma once

#include "operadiff/free_monad.hpp"
#include "operadiff/report.hpp"

#include <cstdint>
#include <functional>

namespace operadiff {

// d on S(P, V) for dim V = k, with values in S(P, V x V).
using DiffFn = std::function<FreeElement(const FreeElement&, std::size_t k)>;

struct AxiomOptions {
  std::size_t dim_v = 2;  // dimension of the test module A
  std::size_t arity_bound = 4;
  std::size_t trials = 200;
  std::uint64_t seed = 7;
  std::size_t maps = 20;  // random linear maps for naturality
  DiffFn diff;            // empty: the operadic d
};

// Linear map on variables of V^a sending input block i to
// sum_j m[i][j] * output block j, for blocks of size k.
std::function<Vector(const Var&)> block_map(std::size_t k, std::vector<std::vector<int>> m);

// Instances used by the suites: all canonical basis terms up to the bound
// and random elements.
std::vector<FreeElement> basis_instances(const FreeMonad& S, std::size_t k, std::size_t bound);
// Terms of S(P, S(P, V)) built from inner basis terms of arity <= 2, outer
// arity <= 3 and total inner arity <= bound.
std::vector<Free<FreeTerm>> nested_basis_instances(const FreeMonad& S, std::size_t k, std::size_t bound);

Report check_dc_axioms(const FreeMonad& S, const AxiomOptions& opt = {});
Report check_lambda_axioms(const FreeMonad& S, const AxiomOptions& opt = {});
Report check_monad_laws(const FreeMonad& S, const AxiomOptions& opt = {});
Report check_naturality(const FreeMonad& S, const AxiomOptions& opt = {});
// [DU.1] and [DU.2]; a single failing check when the counit does not exist.
Report check_counit_laws(const FreeMonad& S, const AxiomOptions& opt = {});
// partial_from_lambda against diff_transform.
Report check_lambda_round_trip(const FreeMonad& S, const AxiomOptions& opt = {});

// Mutation used by the tests: d that omits the first slot of each canonical term.
DiffFn diff_skipping_first_slot(const FreeMonad& S);

std::string render_nested(const Operad& P, const Free<FreeTerm>& e, const BasedModule& V);

}  // namespace operadiff
