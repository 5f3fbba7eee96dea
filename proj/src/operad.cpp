#include "operadiff/operad.hpp"

#include <sstream>

namespace operadiff {

void Operad::require_arity(std::size_t n) const {
  auto m = max_arity();
  if (m && n > *m)
    throw TruncationError("operad " + name() + " is tabulated only up to arity " + std::to_string(*m) +
                          ", requested " + std::to_string(n));
}

std::optional<std::size_t> Operad::find_symbol(const std::string& sym) const {
  try {
    return symbol_index(sym).first;
  } catch (const InputError&) {
    return std::nullopt;
  }
}

std::pair<std::size_t, std::size_t> Operad::symbol_index(const std::string& sym, std::size_t max_n) const {
  auto m = max_arity();
  std::size_t top = m ? std::min(*m, max_n) : max_n;
  for (std::size_t n = 0; n <= top; ++n)
    for (std::size_t i = 0; i < dim(n); ++i)
      if (symbol(n, i) == sym) return {n, i};
  throw InputError("operad " + name() + " has no operation named " + sym);
}

OperadElement partial_compose(const Operad& P, const OperadElement& mu, std::size_t slot, const OperadElement& nu) {
  if (slot >= mu.arity) throw InputError("composition slot out of range");
  std::size_t arity = mu.arity + nu.arity - 1;
  P.require_arity(arity);
  OperadElement out{arity, {}};
  for (const auto& [a, ca] : mu.coeffs)
    for (const auto& [b, cb] : nu.coeffs)
      out.coeffs.add(P.compose_basis(mu.arity, a, slot, nu.arity, b).coeffs, ca * cb);
  return out;
}

OperadElement complete_compose(const Operad& P, const OperadElement& mu, const std::vector<OperadElement>& nus) {
  if (nus.size() != mu.arity) throw InputError("complete composition needs one operation per slot");
  OperadElement out = mu;
  for (std::size_t k = nus.size(); k-- > 0;) out = partial_compose(P, out, k, nus[k]);
  return out;
}

OperadElement sigma_act(const Operad& P, const OperadElement& mu, const Permutation& s) {
  if (s.size() != mu.arity) throw InputError("permutation size differs from arity");
  OperadElement out{mu.arity, {}};
  for (const auto& [a, c] : mu.coeffs) out.coeffs.add(P.act_basis(mu.arity, a, s).coeffs, c);
  return out;
}

namespace {

// Composite of the tree; inputs are renumbered so that the result takes its
// leaves in the order they appear, then reordered to the recorded positions.
OperadElement tree_in_leaf_order(const Operad& P, const std::vector<Generator>& gens, const OpTree& t,
                                 std::vector<std::size_t>& leaves) {
  if (t.is_leaf()) {
    leaves.push_back(static_cast<std::size_t>(t.leaf));
    return P.unit();
  }
  const auto& g = gens.at(t.gen);
  if (g.arity != t.children.size()) throw InputError("operation tree arity mismatch");
  std::vector<OperadElement> parts;
  for (const auto& ch : t.children) parts.push_back(tree_in_leaf_order(P, gens, ch, leaves));
  return complete_compose(P, OperadElement::basis(g.arity, g.basis_index), parts);
}

}  // namespace

OperadElement tree_element(const Operad& P, const OpTree& t, std::size_t arity) {
  std::vector<std::size_t> leaves;
  auto e = tree_in_leaf_order(P, P.generators(), t, leaves);
  if (leaves.size() != arity) throw InputError("operation tree has wrong number of leaves");
  // e reads input leaves[k] in its slot k; acting by s with s(leaves[k]) = k
  // feeds it there.
  std::vector<std::size_t> img(arity);
  for (std::size_t k = 0; k < arity; ++k) img[leaves[k]] = k;
  return sigma_act(P, e, Permutation(img));
}

std::string render_operad_element(const Operad& P, const OperadElement& e) {
  if (e.coeffs.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : e.coeffs) {
    Scalar a = c;
    bool neg = a < Scalar(0);
    if (neg) a = -a;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    if (!a.is_one()) os << a << "*";
    os << P.symbol(e.arity, i);
    first = false;
  }
  return os.str();
}

OperadTableData tabulate_operad(const Operad& P, std::size_t max_arity) {
  OperadTableData d;
  d.name = P.name() + "<=" + std::to_string(max_arity);
  d.max_arity = max_arity;
  d.unit = P.unit().coeffs;
  d.basis.resize(max_arity + 1);
  d.act.resize(max_arity + 1);
  for (std::size_t n = 0; n <= max_arity; ++n)
    for (std::size_t i = 0; i < P.dim(n); ++i) {
      d.basis[n].push_back(P.symbol(n, i));
      std::vector<Vector> row;
      for (std::size_t k = 0; k + 1 < n; ++k)
        row.push_back(P.act_basis(n, i, Permutation::transposition(n, k, k + 1)).coeffs);
      d.act[n].push_back(std::move(row));
    }
  for (std::size_t m = 1; m <= max_arity; ++m)
    for (std::size_t n = 0; m + n - 1 <= max_arity; ++n)
      for (std::size_t a = 0; a < P.dim(m); ++a)
        for (std::size_t b = 0; b < P.dim(n); ++b)
          for (std::size_t i = 0; i < m; ++i) {
            auto c = P.compose_basis(m, a, i, n, b).coeffs;
            if (!c.is_zero()) d.compose[{m, a, i, n, b}] = std::move(c);
          }
  return d;
}

namespace {

std::string sym(const Operad& P, std::size_t n, std::size_t i) { return P.symbol(n, i); }

}  // namespace

Report check_operad_axioms(const Operad& P, std::size_t bound) {
  Report r;
  r.subject = "operad " + P.name() + " up to arity " + std::to_string(bound);
  if (auto m = P.max_arity()) bound = std::min(bound, *m);
  auto& unit = r.add("unit", "1 o mu = mu = mu o_i 1");
  auto& action = r.add("action", "mu.id = mu, (mu.s).t = mu.(s t)");
  auto& seq = r.add("sequential", "(l o_i m) o_{i+j-1} n = l o_i (m o_j n)");
  auto& par = r.add("parallel", "(l o_i m) o_{k+|m|-1} n = (l o_k n) o_i m, i < k");
  auto& eq_out = r.add("equivariance-outer", "(mu.s) o_i nu = (mu o_{s(i)} nu).s'");
  auto& eq_in = r.add("equivariance-inner", "mu o_i (nu.t) = (mu o_i nu).(1 o_i t)");

  const OperadElement one = P.unit();
  for (std::size_t m = 0; m <= bound; ++m) {
    for (std::size_t a = 0; a < P.dim(m); ++a) {
      auto mu = OperadElement::basis(m, a);
      unit.record_lazy(partial_compose(P, one, 0, mu) == mu, [&] { return "1 o " + sym(P, m, a); });
      for (std::size_t i = 0; i < m; ++i)
        unit.record_lazy(partial_compose(P, mu, i, one) == mu,
                         [&] { return sym(P, m, a) + " o_" + std::to_string(i + 1) + " 1"; });
      action.record_lazy(sigma_act(P, mu, Permutation::identity(m)) == mu, [&] { return sym(P, m, a) + ".id"; });
      for (const auto& s : Permutation::all(m)) {
        auto ms = sigma_act(P, mu, s);
        for (std::size_t k = 0; k + 1 < m; ++k) {
          auto t = Permutation::transposition(m, k, k + 1);
          action.record_lazy(sigma_act(P, ms, t) == sigma_act(P, mu, compose(s, t)), [&] {
            return "(" + sym(P, m, a) + "." + s.to_string() + ")." + t.to_string();
          });
        }
      }
    }
  }

  for (std::size_t l = 1; l <= bound; ++l)
    for (std::size_t m = 0; l + m - 1 <= bound; ++m)
      for (std::size_t x = 0; x < P.dim(l); ++x)
        for (std::size_t y = 0; y < P.dim(m); ++y) {
          auto L = OperadElement::basis(l, x);
          auto M = OperadElement::basis(m, y);
          for (std::size_t i = 0; i < l; ++i) {
            auto lm = partial_compose(P, L, i, M);
            {
              std::vector<std::size_t> sizes(l, 1);
              sizes[i] = m;
              for (const auto& s : Permutation::all(l)) {
                auto lhs = partial_compose(P, sigma_act(P, L, s), i, M);
                auto rhs = sigma_act(P, partial_compose(P, L, s(i), M), block_permutation(s, sizes));
                eq_out.record_lazy(lhs == rhs, [&] {
                  return "(" + sym(P, l, x) + "." + s.to_string() + ") o_" + std::to_string(i + 1) + " " + sym(P, m, y);
                });
              }
              for (const auto& t : Permutation::all(m)) {
                auto lhs = partial_compose(P, L, i, sigma_act(P, M, t));
                std::vector<std::size_t> img;
                for (std::size_t k = 0; k < i; ++k) img.push_back(k);
                for (std::size_t k = 0; k < m; ++k) img.push_back(i + t(k));
                for (std::size_t k = i + 1; k < l; ++k) img.push_back(k + m - 1);
                auto rhs = sigma_act(P, lm, Permutation(img));
                eq_in.record_lazy(lhs == rhs, [&] {
                  return sym(P, l, x) + " o_" + std::to_string(i + 1) + " (" + sym(P, m, y) + "." + t.to_string() + ")";
                });
              }
            }
            for (std::size_t n = 0; l + m + n <= bound + 2; ++n) {
              for (std::size_t z = 0; z < P.dim(n); ++z) {
                auto N = OperadElement::basis(n, z);
                for (std::size_t j = 0; j < m; ++j) {
                  auto lhs = partial_compose(P, lm, i + j, N);
                  auto rhs = partial_compose(P, L, i, partial_compose(P, M, j, N));
                  seq.record_lazy(lhs == rhs, [&] {
                    return "(" + sym(P, l, x) + " o_" + std::to_string(i + 1) + " " + sym(P, m, y) + ") o_" +
                           std::to_string(i + j + 1) + " " + sym(P, n, z);
                  });
                }
                for (std::size_t k = i + 1; k < l && l + n - 1 <= bound; ++k) {
                  auto lhs = partial_compose(P, lm, k + m - 1, N);
                  auto rhs = partial_compose(P, partial_compose(P, L, k, N), i, M);
                  par.record_lazy(lhs == rhs, [&] {
                    return "(" + sym(P, l, x) + " o_" + std::to_string(i + 1) + " " + sym(P, m, y) + ") o_" +
                           std::to_string(k + m) + " " + sym(P, n, z);
                  });
                }
              }
            }
          }
        }
  return r;
}

Report check_operad_morphism(const Operad& P, const Operad& Q, const OperadMorphism& f, std::size_t bound) {
  Report r;
  r.subject = "morphism " + P.name() + " -> " + Q.name() + " up to arity " + std::to_string(bound);
  auto& unit = r.add("unit", "f(1) = 1");
  auto& comp = r.add("composition", "f(mu o_i nu) = f(mu) o_i f(nu)");
  auto& act = r.add("action", "f(mu.s) = f(mu).s");
  auto apply = [&](const OperadElement& e) {
    OperadElement out{e.arity, {}};
    for (const auto& [i, c] : e.coeffs) {
      auto img = f(e.arity, i);
      if (img.arity != e.arity) throw InputError("operad morphism changes arity");
      out.coeffs.add(img.coeffs, c);
    }
    return out;
  };
  unit.record(apply(P.unit()) == Q.unit(), "f(1) = " + render_operad_element(Q, apply(P.unit())));
  for (std::size_t m = 0; m <= bound; ++m)
    for (std::size_t a = 0; a < P.dim(m); ++a) {
      auto mu = OperadElement::basis(m, a);
      for (const auto& s : Permutation::all(m))
        act.record_lazy(apply(sigma_act(P, mu, s)) == sigma_act(Q, apply(mu), s),
                        [&] { return sym(P, m, a) + "." + s.to_string(); });
      for (std::size_t n = 0; m >= 1 && m + n - 1 <= bound; ++n)
        for (std::size_t b = 0; b < P.dim(n); ++b)
          for (std::size_t i = 0; i < m; ++i) {
            auto nu = OperadElement::basis(n, b);
            comp.record_lazy(apply(partial_compose(P, mu, i, nu)) == partial_compose(Q, apply(mu), i, apply(nu)),
                             [&] { return sym(P, m, a) + " o_" + std::to_string(i + 1) + " " + sym(P, n, b); });
          }
    }
  return r;
}

}  // namespace operadiff
