#pragma once

// Independent reference computations used by the tests. None of these go
// through the operad, free-monad or presentation engines.

#include "operadiff/lie_rewrite.hpp"
#include "operadiff/linalg.hpp"
#include "operadiff/permutation.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace oracle {

using operadiff::LinComb;
using operadiff::Scalar;

// Noncommutative polynomial: word -> coefficient.
using NCPoly = LinComb<std::vector<int>>;

inline NCPoly nc_mul(const NCPoly& a, const NCPoly& b) {
  NCPoly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      auto w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.add(w, cu * cv);
    }
  return out;
}

inline NCPoly nc_bracket(const NCPoly& a, const NCPoly& b) { return nc_mul(a, b) - nc_mul(b, a); }

inline NCPoly expand(const operadiff::BracketTree& t) {
  if (t.is_leaf()) return NCPoly(std::vector<int>{t.leaf});
  return nc_bracket(expand(*t.left), expand(*t.right));
}

// Right-normed [l0,[l1,...,l_{k-1}]] expanded.
inline NCPoly expand_right_normed(const std::vector<int>& leaves) {
  NCPoly p(std::vector<int>{leaves.back()});
  for (auto it = leaves.rbegin() + 1; it != leaves.rend(); ++it) p = nc_bracket(NCPoly(std::vector<int>{*it}), p);
  return p;
}

// Expansion of basis element i of Lie(n) in the right-normed basis ending in n.
inline NCPoly lie_basis_expansion(std::size_t n, std::size_t i) {
  auto head = operadiff::arrangement_unrank(n - 1, i);
  head.push_back(static_cast<int>(n));
  return expand_right_normed(head);
}

inline NCPoly lie_element_expansion(std::size_t n, const operadiff::Vector& coeffs) {
  NCPoly p;
  for (const auto& [i, c] : coeffs) p.add(lie_basis_expansion(n, i), c);
  return p;
}

// Replace letter `slot` (1-based) of p by q shifted into slot..slot+|q|-1,
// shifting later letters.
inline NCPoly substitute(const NCPoly& p, int slot, const NCPoly& q, int q_arity) {
  NCPoly out;
  for (const auto& [w, c] : p) {
    NCPoly acc(std::vector<int>{});
    for (int l : w) {
      if (l == slot) {
        NCPoly shifted;
        for (const auto& [v, cv] : q) {
          auto s = v;
          for (auto& x : s) x += slot - 1;
          shifted.add(s, cv);
        }
        acc = nc_mul(acc, shifted);
      } else {
        acc = nc_mul(acc, NCPoly(std::vector<int>{l > slot ? l + q_arity - 1 : l}));
      }
    }
    out.add(acc, c);
  }
  return out;
}

inline NCPoly relabel(const NCPoly& p, const std::vector<int>& to) {
  NCPoly out;
  for (const auto& [w, c] : p) {
    auto s = w;
    for (auto& x : s) x = to[static_cast<std::size_t>(x)];
    out.add(s, c);
  }
  return out;
}

// Lyndon words over an alphabet of size k with given length, by content.
// Returns map content-vector -> count.
inline std::map<std::vector<int>, std::size_t> lyndon_counts(int k, int length) {
  std::map<std::vector<int>, std::size_t> out;
  // Duval's generation of Lyndon words up to the given length.
  std::vector<int> w{-1};
  while (!w.empty()) {
    ++w.back();
    if (static_cast<int>(w.size()) == length) {
      std::vector<int> content(static_cast<std::size_t>(k), 0);
      for (int x : w) ++content[static_cast<std::size_t>(x)];
      ++out[content];
    }
    auto m = w.size();
    while (static_cast<int>(w.size()) < length) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == k - 1) w.pop_back();
  }
  return out;
}

// Commutative polynomials: exponent vector -> coefficient.
using Poly = LinComb<std::vector<int>>;

inline Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [u, cu] : a)
    for (const auto& [v, cv] : b) {
      auto w = u;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += v[i];
      out.add(w, cu * cv);
    }
  return out;
}

// Textbook partial derivative.
inline Poly poly_partial(const Poly& p, std::size_t var) {
  Poly out;
  for (const auto& [e, c] : p) {
    if (e[var] == 0) continue;
    auto f = e;
    f[var] -= 1;
    out.add(f, c * Scalar(static_cast<long>(e[var])));
  }
  return out;
}

// Total differential sum_i (dp/dx_i) dx_i over 2n variables (x..., dx...).
inline Poly poly_total_differential(const Poly& p, std::size_t n) {
  Poly out;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [e, c] : poly_partial(p, i)) {
      std::vector<int> f(2 * n, 0);
      for (std::size_t j = 0; j < n; ++j) f[j] = e[j];
      f[n + i] += 1;
      out.add(f, c);
    }
  return out;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Cells (d, w) of the free algebra on V x V, dim V = k: w variables, d of them
// from the second copy.
inline std::size_t multisets(std::size_t k, std::size_t size) { return size == 0 ? 1 : binomial(k + size - 1, size); }

inline std::size_t com_pair_cell(std::size_t k, std::size_t d, std::size_t w) {
  return d > w ? 0 : multisets(k, w - d) * multisets(k, d);
}

inline std::size_t ass_pair_cell(std::size_t k, std::size_t d, std::size_t w) {
  if (d > w) return 0;
  std::size_t p = 1;
  for (std::size_t i = 0; i < w; ++i) p *= k;
  return p * binomial(w, d);
}

inline std::size_t lie_pair_cell(std::size_t k, std::size_t d, std::size_t w) {
  if (w == 0 || k == 0) return 0;
  std::size_t total = 0;
  for (const auto& [content, n] : lyndon_counts(static_cast<int>(2 * k), static_cast<int>(w))) {
    std::size_t second = 0;
    for (std::size_t i = k; i < 2 * k; ++i) second += static_cast<std::size_t>(content[i]);
    if (second == d) total += n;
  }
  return total;
}

}  // namespace oracle
