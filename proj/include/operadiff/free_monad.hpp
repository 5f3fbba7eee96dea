#pragma once

#include "operadiff/operad.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <tuple>
#include <utility>
#include <vector>

namespace operadiff {

// Orbit class (op; word) in S(P, V): a basis operation of P(arity) applied to
// a word of variables. Terms are kept in canonical form, see FreeMonad.
template <class V>
struct Term {
  std::size_t arity = 0;
  std::size_t op = 0;
  std::vector<V> word;

  friend bool operator==(const Term& a, const Term& b) {
    return a.arity == b.arity && a.op == b.op && a.word == b.word;
  }
  friend bool operator<(const Term& a, const Term& b) {
    return std::tie(a.arity, a.word, a.op) < std::tie(b.arity, b.word, b.op);
  }
};

template <class V>
using Free = LinComb<Term<V>>;

// Variables are basis indices of a BasedModule. For the product V^m of a
// module of dimension k, block b occupies indices [b*k, (b+1)*k).
using Var = std::size_t;
using FreeTerm = Term<Var>;
using FreeElement = Free<Var>;
// Variables of S(P, S(P,V) x S(P,V)): (component, term).
using PairVar = std::pair<int, FreeTerm>;

template <class V>
using VarMap = std::function<LinComb<V>(const Var&)>;

// The free-algebra monad S(P, -) with its differential structure. Holds the
// canonicalization caches; safe to share between threads.
class FreeMonad {
 public:
  explicit FreeMonad(OperadPtr P);

  const Operad& operad() const { return *P_; }
  OperadPtr operad_ptr() const { return P_; }

  // Canonical form of (mu; word). Com sorts the word, Ass moves the
  // permutation into the word, other operads sort the word and reduce the
  // operation modulo the stabilizer of the sorted word.
  template <class V>
  Free<V> canonicalize(const OperadElement& mu, const std::vector<V>& word) const;
  template <class V>
  Free<V> canonicalize(const Free<V>& e) const;

  // eta(v) = (1; v)
  template <class V>
  Free<V> unit(const V& v) const {
    return canonicalize(P_->unit(), std::vector<V>{v});
  }
  // gamma: S(P, S(P, V)) -> S(P, V)
  template <class V>
  Free<V> mult(const Free<Term<V>>& e) const;
  // mu(e_1, ..., e_k) in the free algebra.
  template <class V>
  Free<V> apply(const OperadElement& mu, const std::vector<Free<V>>& args) const;
  // S(f) for f given on variables, extended multilinearly.
  template <class V, class W, class F>
  Free<W> map(const Free<V>& e, F&& f) const;
  // S(f) for f: V -> W a linear map between based modules.
  FreeElement map_linear(const FreeElement& e, const LinearMap& f) const;

  // d(mu; v_1..v_n) = sum_i (mu; (v_1,0)..(0,v_i)..(v_n,0)), with point and
  // tangent copies produced by inj0 and inj1.
  template <class V, class W, class I0, class I1>
  Free<W> diff(const Free<V>& e, I0&& inj0, I1&& inj1) const;
  // d on S(P, V) with V of dimension k: tangent copy of v is v + k.
  FreeElement diff(const FreeElement& e, std::size_t k) const;

  // lambda(mu; (u_1,v_1)..(u_n,v_n)) = ((mu; u), sum_i (mu; u_1..v_i..u_n)),
  // the variables of e being split by pi1, pi2.
  template <class V, class W, class P1, class P2>
  std::pair<Free<W>, Free<W>> lambda(const Free<V>& e, P1&& pi1, P2&& pi2) const;
  // lambda on S(P, V x V) with dim V = k.
  std::pair<FreeElement, FreeElement> lambda(const FreeElement& e, std::size_t k) const;

  // Canonical basis of S(P, V) in one arity, dim V = k.
  std::vector<FreeTerm> basis_terms(std::size_t arity, std::size_t k) const;
  std::vector<FreeTerm> basis_terms_up_to(std::size_t max_arity, std::size_t k) const;
  // Canonical terms over a sorted multiset of variables.
  template <class V>
  std::vector<Term<V>> basis_for_word(const std::vector<V>& sorted_word) const;

  // Arity cap of the stabilizer reduction used for operads without a fast path.
  static constexpr std::size_t generic_arity_cap = 8;

 private:
  // (mu . s) reduced modulo the stabilizer of a sorted word whose blocks of
  // equal letters have the given sizes.
  Vector reduced_op(std::size_t n, std::size_t a, const Permutation& s, const std::vector<std::size_t>& blocks) const;
  const Echelon& stabilizer_relations(std::size_t n, const std::vector<std::size_t>& blocks) const;
  OperadElement compose_terms(std::size_t k, std::size_t a, const std::vector<std::pair<std::size_t, std::size_t>>& inner) const;

  OperadPtr P_;
  mutable std::mutex mu_;
  mutable std::map<std::vector<std::size_t>, Echelon> stabilizers_;
  mutable std::map<std::vector<std::size_t>, Vector> reduced_;
};

// Free-function forms of the monad structure.
FreeElement monad_unit(const FreeMonad& S, Var v);
FreeElement monad_mult(const FreeMonad& S, const Free<FreeTerm>& e);
FreeElement functor_map(const FreeMonad& S, const FreeElement& e, const LinearMap& f);
FreeElement diff_transform(const FreeMonad& S, const FreeElement& e, std::size_t dim_v);
std::pair<FreeElement, FreeElement> dist_law(const FreeMonad& S, const FreeElement& e, std::size_t dim_v);
// d recovered from lambda as pi2 o lambda_{VxV} o S(<1,0,0,1>).
FreeElement partial_from_lambda(const FreeMonad& S, const FreeElement& e, std::size_t dim_v);

// The counit S(P,V) -> V exists iff P(1) is spanned by the unit.
bool counit_exists(const Operad& P);
Vector dlinear_counit(const FreeMonad& S, const FreeElement& e);

std::string render_term(const Operad& P, const FreeTerm& t, const BasedModule& V);
std::string render_free(const Operad& P, const FreeElement& e, const BasedModule& V);

// Random elements with coefficients in {-3..3} and at most max_terms terms.
struct RandomFree {
  std::mt19937_64 rng;
  int coeff_min = -3, coeff_max = 3;
  std::size_t max_terms = 4;

  explicit RandomFree(std::uint64_t seed) : rng(seed) {}
  Scalar coefficient();
  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
  FreeElement element(const FreeMonad& S, std::size_t dim_v, std::size_t max_arity, std::size_t min_arity = 0);
  // Element of S(P, S(P, V)) with total inner arity at most max_total.
  Free<FreeTerm> nested(const FreeMonad& S, std::size_t dim_v, std::size_t max_total);
  Free<Term<FreeTerm>> nested3(const FreeMonad& S, std::size_t dim_v, std::size_t max_total);
  LinearMap linear_map(std::size_t dom, std::size_t cod);
};

// ---------------------------------------------------------------------------

template <class V>
Free<V> FreeMonad::canonicalize(const OperadElement& mu, const std::vector<V>& word) const {
  if (word.size() != mu.arity) throw InputError("word length differs from operation arity");
  Free<V> out;
  if (mu.coeffs.is_zero()) return out;
  const std::size_t n = mu.arity;
  switch (P_->canonical_path()) {
    case CanonicalPath::Com: {
      auto w = word;
      std::sort(w.begin(), w.end());
      Scalar c;
      for (const auto& [a, v] : mu.coeffs) c += v;
      out.add(Term<V>{n, 0, std::move(w)}, c);
      return out;
    }
    case CanonicalPath::Ass: {
      for (const auto& [a, c] : mu.coeffs) {
        auto u = arrangement_unrank(n, a);
        std::vector<V> w;
        w.reserve(n);
        for (int l : u) w.push_back(word[static_cast<std::size_t>(l - 1)]);
        out.add(Term<V>{n, 0, std::move(w)}, c);
      }
      return out;
    }
    case CanonicalPath::Generic:
      break;
  }
  if (n > generic_arity_cap)
    throw TruncationError("canonical form of arity " + std::to_string(n) + " exceeds cap " +
                          std::to_string(generic_arity_cap));
  // (mu; w) = (mu . t^-1; act(t, w)) with act(t, w) sorted.
  auto t = Permutation::sorting(word);
  auto sorted = act_word(t, word);
  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || !(sorted[i] == sorted[i - 1]))
      blocks.push_back(1);
    else
      ++blocks.back();
  }
  auto tinv = t.inverse();
  for (const auto& [a, c] : mu.coeffs)
    for (const auto& [b, v] : reduced_op(n, a, tinv, blocks)) out.add(Term<V>{n, b, sorted}, c * v);
  return out;
}

template <class V>
Free<V> FreeMonad::canonicalize(const Free<V>& e) const {
  Free<V> out;
  for (const auto& [t, c] : e) out.add(canonicalize(OperadElement::basis(t.arity, t.op), t.word), c);
  return out;
}

template <class V>
Free<V> FreeMonad::mult(const Free<Term<V>>& e) const {
  Free<V> out;
  for (const auto& [outer, c] : e) {
    std::vector<std::pair<std::size_t, std::size_t>> inner;
    std::vector<V> word;
    for (const auto& t : outer.word) {
      inner.emplace_back(t.arity, t.op);
      word.insert(word.end(), t.word.begin(), t.word.end());
    }
    out.add(canonicalize(compose_terms(outer.arity, outer.op, inner), word), c);
  }
  return out;
}

template <class V>
Free<V> FreeMonad::apply(const OperadElement& mu, const std::vector<Free<V>>& args) const {
  if (args.size() != mu.arity) throw InputError("operation applied to wrong number of arguments");
  Free<V> out;
  std::vector<std::pair<std::size_t, std::size_t>> inner(args.size());
  std::vector<const Term<V>*> chosen(args.size());
  std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar c) {
    if (i == args.size()) {
      std::vector<V> word;
      for (std::size_t j = 0; j < args.size(); ++j) {
        inner[j] = {chosen[j]->arity, chosen[j]->op};
        word.insert(word.end(), chosen[j]->word.begin(), chosen[j]->word.end());
      }
      for (const auto& [a, ca] : mu.coeffs)
        out.add(canonicalize(compose_terms(mu.arity, a, inner), word), c * ca);
      return;
    }
    for (const auto& [t, ct] : args[i]) {
      chosen[i] = &t;
      rec(i + 1, c * ct);
    }
  };
  rec(0, Scalar(1));
  return out;
}

template <class V, class W, class F>
Free<W> FreeMonad::map(const Free<V>& e, F&& f) const {
  Free<W> out;
  for (const auto& [t, c] : e) {
    std::vector<LinComb<W>> images;
    images.reserve(t.word.size());
    bool zero = false;
    for (const auto& v : t.word) {
      images.push_back(f(v));
      if (images.back().is_zero()) zero = true;
    }
    if (zero) continue;
    std::vector<W> word(t.word.size());
    const auto mu = OperadElement::basis(t.arity, t.op);
    std::function<void(std::size_t, Scalar)> rec = [&](std::size_t i, Scalar k) {
      if (i == word.size()) {
        out.add(canonicalize(mu, word), k);
        return;
      }
      for (const auto& [w, cw] : images[i]) {
        word[i] = w;
        rec(i + 1, k * cw);
      }
    };
    rec(0, c);
  }
  return out;
}

template <class V, class W, class I0, class I1>
Free<W> FreeMonad::diff(const Free<V>& e, I0&& inj0, I1&& inj1) const {
  Free<W> out;
  for (const auto& [t, c] : e) {
    const auto mu = OperadElement::basis(t.arity, t.op);
    std::vector<W> base;
    base.reserve(t.word.size());
    for (const auto& v : t.word) base.push_back(inj0(v));
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      auto w = base;
      w[i] = inj1(t.word[i]);
      out.add(canonicalize(mu, w), c);
    }
  }
  return out;
}

template <class V, class W, class P1, class P2>
std::pair<Free<W>, Free<W>> FreeMonad::lambda(const Free<V>& e, P1&& pi1, P2&& pi2) const {
  Free<W> first, second;
  first = map<V, W>(e, pi1);
  for (const auto& [t, c] : e) {
    const auto mu = OperadElement::basis(t.arity, t.op);
    for (std::size_t i = 0; i < t.word.size(); ++i) {
      std::vector<LinComb<W>> images;
      bool zero = false;
      for (std::size_t j = 0; j < t.word.size(); ++j) {
        images.push_back(j == i ? pi2(t.word[j]) : pi1(t.word[j]));
        if (images.back().is_zero()) zero = true;
      }
      if (zero) continue;
      std::vector<W> word(t.word.size());
      std::function<void(std::size_t, Scalar)> rec = [&](std::size_t j, Scalar k) {
        if (j == word.size()) {
          second.add(canonicalize(mu, word), k);
          return;
        }
        for (const auto& [w, cw] : images[j]) {
          word[j] = w;
          rec(j + 1, k * cw);
        }
      };
      rec(0, c);
    }
  }
  return {std::move(first), std::move(second)};
}

template <class V>
std::vector<Term<V>> FreeMonad::basis_for_word(const std::vector<V>& sorted) const {
  std::vector<Term<V>> out;
  const std::size_t n = sorted.size();
  if (P_->dim(n) == 0) return out;
  switch (P_->canonical_path()) {
    case CanonicalPath::Com:
      out.push_back(Term<V>{n, 0, sorted});
      return out;
    case CanonicalPath::Ass: {
      auto w = sorted;
      do {
        out.push_back(Term<V>{n, 0, w});
      } while (std::next_permutation(w.begin(), w.end()));
      return out;
    }
    case CanonicalPath::Generic:
      break;
  }
  std::vector<std::size_t> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || !(sorted[i] == sorted[i - 1]))
      blocks.push_back(1);
    else
      ++blocks.back();
  }
  const auto& rel = stabilizer_relations(n, blocks);
  for (std::size_t b = 0; b < P_->dim(n); ++b)
    if (!rel.is_pivot(b)) out.push_back(Term<V>{n, b, sorted});
  return out;
}

}  // namespace operadiff
