#pragma once

#include "operadiff/dc_axioms.hpp"

namespace operadiff {

// A map n -> m of P-POLY: m elements of S(P, R^n). Variable i of R^n is Var i.
struct PPolyMap {
  std::size_t source = 0, target = 0;
  std::vector<FreeElement> components;

  friend bool operator==(const PPolyMap& a, const PPolyMap& b) {
    return a.source == b.source && a.target == b.target && a.components == b.components;
  }
};

PPolyMap ppoly_identity(const FreeMonad& S, std::size_t n);
// Projection onto the variables [first, first + count) of R^n.
PPolyMap ppoly_projection(const FreeMonad& S, std::size_t n, std::size_t first, std::size_t count);
PPolyMap ppoly_pair(const PPolyMap& f, const PPolyMap& g);
// Map induced by a linear map R^n -> R^m.
PPolyMap ppoly_linear(const FreeMonad& S, const LinearMap& L);

constexpr std::size_t default_arity_cap = 10;

// g o f by substitution (S(f) followed by gamma). Throws TruncationError if
// a term of the result would exceed the arity cap.
PPolyMap ppoly_compose(const FreeMonad& S, const PPolyMap& g, const PPolyMap& f,
                       std::size_t arity_cap = default_arity_cap);
// D[f]: 2n -> m, the second n variables being the tangent copies.
PPolyMap ppoly_diff(const FreeMonad& S, const PPolyMap& f, const DiffFn& d = {});

std::string render_ppoly(const Operad& P, const PPolyMap& f, const BasedModule& vars);
// x1..xn (or x when n = 1) followed by dx1..dxn.
BasedModule ppoly_variables(std::size_t n, bool doubled);

PPolyMap random_ppoly(RandomFree& R, const FreeMonad& S, std::size_t n, std::size_t m, std::size_t max_arity);

struct CdcOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 7;
  std::size_t max_arity = 2;  // arity of random components
  DiffFn diff;                // empty: the operadic d
};

// Chain rule, tangent additivity, linear maps, second-derivative symmetry,
// the lift identity, category laws and products on random maps.
Report check_cdc_properties(const FreeMonad& S, const CdcOptions& opt = {});

}  // namespace operadiff
