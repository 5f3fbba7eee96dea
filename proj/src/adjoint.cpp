#include "operadiff/adjoint.hpp"

#include <algorithm>
#include <random>

namespace operadiff {

namespace {

template <class F>
void for_tuples(std::size_t dim, std::size_t len, F&& f) {
  std::vector<std::size_t> w(len, 0);
  if (len > 0 && dim == 0) return;
  while (true) {
    f(w);
    std::size_t i = len;
    while (i > 0 && w[i - 1] + 1 == dim) --i;
    if (i == 0) return;
    ++w[i - 1];
    for (std::size_t j = i; j < len; ++j) w[j] = 0;
  }
}

PresentationBounds with(PresentationBounds b, std::size_t degree, std::size_t weight) {
  b.max_degree = degree;
  b.max_weight = weight;
  return b;
}

Vector shifted(const Vector& v, std::size_t by) {
  Vector out;
  for (const auto& [i, c] : v) out.add(i + by, c);
  return out;
}

Vector truncated(const Vector& v, std::size_t lo, std::size_t hi, std::size_t by = 0) {
  Vector out;
  for (const auto& [i, c] : v)
    if (i >= lo && i < hi) out.add(i - by, c);
  return out;
}

std::vector<std::size_t> module_basis_weights(std::size_t n) { return std::vector<std::size_t>(n, 0); }

std::string failures(const Report& r) {
  for (const auto& c : r.checks)
    if (!c.passed) return c.name + ": " + c.counterexample;
  return {};
}

// Records a report's outcome as one instance of check c.
void absorb(Check& c, const Report& r, const std::string& what) {
  c.record_lazy(r.passed(), [&] { return what + ": " + failures(r); });
}

}  // namespace

// ---------------------------------------------------------------- building blocks

GradedAlgebra free_algebra_truncated(OperadPtr P, std::size_t k, std::size_t w) {
  FreeMonad S(P);
  auto terms = S.basis_terms_up_to(w, k);
  std::map<FreeTerm, std::size_t> index;
  std::vector<std::string> names;
  std::vector<std::size_t> weight;
  auto vars = BasedModule::coordinates(k, "x");
  for (const auto& t : terms) {
    index[t] = names.size();
    names.push_back(render_term(*P, t, vars));
    weight.push_back(t.arity);
  }
  auto gens = P->generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for_tuples(terms.size(), gens[g].arity, [&](const std::vector<std::size_t>& idx) {
      std::size_t ar = 0;
      std::vector<FreeElement> args;
      for (auto i : idx) {
        ar += terms[i].arity;
        args.emplace_back(terms[i]);
      }
      if (ar > w) return;
      Vector v;
      for (const auto& [t, c] : S.apply(OperadElement::basis(gens[g].arity, gens[g].basis_index), args))
        v.add(index.at(t), c);
      if (!v.is_zero()) tables[g][idx] = v;
    });
  return with_grading(PAlgebra(P, BasedModule(names), std::move(tables)), weight, w);
}

GradedAlgebra graded_tangent_bundle(const GradedAlgebra& A) {
  auto w = A.weight;
  w.insert(w.end(), A.weight.begin(), A.weight.end());
  return GradedAlgebra{std::make_shared<const PAlgebra>(tangent_bundle(*A)), w, A.exact_up_to};
}

PAlgebra initial_algebra(OperadPtr P) {
  const auto& Q = *P;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < Q.dim(0); ++i) names.push_back(Q.symbol(0, i));
  auto gens = Q.generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for_tuples(names.size(), gens[g].arity, [&](const std::vector<std::size_t>& idx) {
      std::vector<OperadElement> nus;
      for (auto i : idx) nus.push_back(OperadElement::basis(0, i));
      auto r = complete_compose(Q, OperadElement::basis(gens[g].arity, gens[g].basis_index), nus);
      if (!r.coeffs.is_zero()) tables[g][idx] = r.coeffs;
    });
  return PAlgebra(P, BasedModule(names), std::move(tables));
}

AlgebraModule p0_module(OperadPtr P, std::size_t dim, std::vector<LinearMap> action) {
  const auto& Q = *P;
  const std::size_t base = Q.dim(0);
  if (action.empty()) {
    if (Q.dim(1) != 1) throw InputError("P(1) is not one-dimensional; give the action explicitly");
    auto u = Q.unit().coeffs.coeff(0);
    action.push_back(LinearMap::identity(dim).scaled(Scalar(1) / u));
  }
  if (action.size() != Q.dim(1)) throw InputError("need one action matrix per basis element of P(1)");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < base; ++i) names.push_back(Q.symbol(0, i));
  for (std::size_t i = 0; i < dim; ++i) names.push_back("m" + std::to_string(i + 1));
  auto gens = Q.generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for_tuples(base + dim, gens[g].arity, [&](const std::vector<std::size_t>& idx) {
      std::size_t in_m = 0, slot = 0;
      for (std::size_t s = 0; s < idx.size(); ++s)
        if (idx[s] >= base) {
          ++in_m;
          slot = s;
        }
      if (in_m > 1) return;
      std::vector<OperadElement> nus;
      for (std::size_t s = 0; s < idx.size(); ++s)
        nus.push_back(idx[s] >= base ? Q.unit() : OperadElement::basis(0, idx[s]));
      auto r = complete_compose(Q, OperadElement::basis(gens[g].arity, gens[g].basis_index), nus);
      Vector v;
      if (in_m == 0) {
        v = r.coeffs;
      } else {
        for (const auto& [b, c] : r.coeffs) v.add(shifted(action.at(b).column(idx[slot] - base), base), c);
      }
      if (!v.is_zero()) tables[g][idx] = v;
    });
  PAlgebra E(P, BasedModule(names), std::move(tables));
  return AlgebraModule{with_grading(std::move(E), module_basis_weights(base + dim)), base};
}

AlgebraModule com_module(const GradedAlgebra& A, const std::vector<LinearMap>& action,
                         const std::vector<std::size_t>& module_weight, std::vector<std::string> names) {
  const std::size_t k = A->dim(), m = module_weight.size();
  if (action.size() != k) throw InputError("need one action matrix per basis element");
  if (names.empty())
    for (std::size_t i = 0; i < m; ++i) names.push_back("m" + std::to_string(i + 1));
  auto all = A->carrier().names();
  all.insert(all.end(), names.begin(), names.end());
  std::vector<std::vector<Vector>> mult(k + m, std::vector<Vector>(k + m));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) mult[i][j] = A->evaluate_basis(2, 0, {i, j});
    for (std::size_t j = 0; j < m; ++j) mult[i][k + j] = mult[k + j][i] = shifted(action[i].column(j), k);
  }
  auto E = make_unital_algebra(A->operad_ptr(), BasedModule(all), mult, A->evaluate_basis(0, 0, {}));
  auto w = A.weight;
  w.insert(w.end(), module_weight.begin(), module_weight.end());
  return AlgebraModule{with_grading(std::move(E), w), k};
}

PAlgebra pointed_algebra(OperadPtr P, BasedModule carrier, const std::vector<LinearMap>& action) {
  auto gens = P->generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].arity != 1) throw InputError("pointed algebras need unary generators");
    for (std::size_t x = 0; x < carrier.dim(); ++x) {
      const auto& v = action.at(gens[g].basis_index).column(x);
      if (!v.is_zero()) tables[g][{x}] = v;
    }
  }
  return PAlgebra(std::move(P), std::move(carrier), std::move(tables));
}

AlgebraModule pointed_extension(const PAlgebra& M, const PAlgebra& N) {
  auto names = M.carrier().names();
  for (const auto& n : N.carrier().names()) names.push_back(M.carrier().find(n) ? "n." + n : n);
  std::vector<GeneratorTable> tables(M.tables().size());
  for (std::size_t g = 0; g < tables.size(); ++g) {
    tables[g] = M.tables()[g];
    for (const auto& [idx, v] : N.tables().at(g)) {
      auto w = idx;
      for (auto& i : w) i += M.dim();
      tables[g][w] = shifted(v, M.dim());
    }
  }
  PAlgebra E(M.operad_ptr(), BasedModule(names), std::move(tables));
  return AlgebraModule{with_grading(std::move(E), module_basis_weights(names.size())), M.dim()};
}

// ---------------------------------------------------------------- closed forms

namespace {

using SymKey = std::pair<std::size_t, std::vector<std::size_t>>;  // a . db1 .. dbk

struct SymCell {
  std::vector<SymKey> terms;
  Quotient quotient;
};

std::map<CellKey, SymCell> sym_kahler_cells(const GradedAlgebra& A, std::size_t max_degree, std::size_t max_weight) {
  if (A->operad().flavor() != "com") throw DomainError("the symmetric-algebra closed form needs a commutative algebra");
  const std::size_t n = A->dim();
  auto mul = [&](std::size_t i, std::size_t j) { return A->evaluate_basis(2, 0, {i, j}); };
  std::map<CellKey, std::map<SymKey, std::size_t>> index;
  std::map<CellKey, SymCell> cells;
  for (std::size_t k = 0; k <= max_degree; ++k) {
    for (std::size_t w = 0; w <= max_weight; ++w) cells[{k, w}];
    std::vector<std::size_t> m;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t wt) {
      if (m.size() == k) {
        for (std::size_t a = 0; a < n; ++a) {
          auto tw = wt + A.weight[a];
          if (tw > max_weight) continue;
          auto& cell = cells[{k, tw}];
          index[{k, tw}][{a, m}] = cell.terms.size();
          cell.terms.push_back({a, m});
        }
        return;
      }
      for (std::size_t b = from; b < n; ++b) {
        if (wt + A.weight[b] > max_weight) continue;
        m.push_back(b);
        rec(b, wt + A.weight[b]);
        m.pop_back();
      }
    };
    rec(0, 0);
  }
  std::map<CellKey, std::vector<Vector>> rels;
  for (std::size_t k = 1; k <= max_degree; ++k) {
    // a' (d(bc) - b dc - c db) m with |m| = k - 1
    std::vector<std::size_t> m;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t wt) {
      if (m.size() + 1 == k) {
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) {
              auto tw = wt + A.weight[a] + A.weight[b] + A.weight[c];
              if (tw > max_weight) continue;
              const CellKey key{k, tw};
              const auto& idx = index[key];
              auto with_d = [&](std::size_t x) {
                auto mm = m;
                mm.insert(std::upper_bound(mm.begin(), mm.end(), x), x);
                return mm;
              };
              Vector r;
              for (const auto& [o, co] : mul(b, c)) r.add(idx.at({a, with_d(o)}), co);
              for (const auto& [o, co] : mul(a, b)) r.add(idx.at({o, with_d(c)}), -co);
              for (const auto& [o, co] : mul(a, c)) r.add(idx.at({o, with_d(b)}), -co);
              if (!r.is_zero()) rels[key].push_back(std::move(r));
            }
        return;
      }
      for (std::size_t b = from; b < n; ++b) {
        if (wt + A.weight[b] > max_weight) continue;
        m.push_back(b);
        rec(b, wt + A.weight[b]);
        m.pop_back();
      }
    };
    rec(0, 0);
  }
  for (auto& [key, cell] : cells) cell.quotient = quotient_basis(cell.terms.size(), rels[key]);
  return cells;
}

}  // namespace

CellTable sym_kahler_dims(const GradedAlgebra& A, std::size_t max_degree, std::size_t max_weight) {
  CellTable out;
  for (const auto& [key, cell] : sym_kahler_cells(A, max_degree, max_weight)) out[key] = cell.quotient.dim();
  return out;
}

AlgebraModule kahler_module(const GradedAlgebra& A) {
  std::size_t top = 0;
  for (auto w : A.weight) top = std::max(top, w);
  auto cells = sym_kahler_cells(A, 1, 2 * top);
  const auto& names = A->carrier();
  // module basis: representatives of the degree-one cells
  std::vector<std::pair<CellKey, std::size_t>> basis;
  std::vector<std::string> mnames;
  std::vector<std::size_t> mweight;
  std::map<CellKey, std::size_t> offset;
  for (const auto& [key, cell] : cells) {
    if (key.first != 1) continue;
    offset[key] = basis.size();
    for (std::size_t r = 0; r < cell.quotient.dim(); ++r) {
      const auto& [a, m] = cell.terms[cell.quotient.representatives[r]];
      basis.push_back({key, r});
      auto unit = A->evaluate_basis(0, 0, {});
      mnames.push_back((unit == Vector(a) ? "" : names.name(a) + "*") + "d" + names.name(m[0]));
      mweight.push_back(key.second);
    }
  }
  std::vector<LinearMap> action(A->dim(), LinearMap(basis.size(), basis.size()));
  for (std::size_t i = 0; i < A->dim(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const auto& [key, r] = basis[j];
      const auto& cell = cells.at(key);
      const auto& [a, m] = cell.terms[cell.quotient.representatives[r]];
      Vector image;
      for (const auto& [o, c] : A->evaluate_basis(2, 0, {i, a})) {
        const CellKey target{1, A.weight[o] + A.weight[m[0]]};
        const auto& tc = cells.at(target);
        auto pos = std::find(tc.terms.begin(), tc.terms.end(), SymKey{o, m}) - tc.terms.begin();
        Vector amb(static_cast<std::size_t>(pos));
        image += c * shifted(tc.quotient.projection.apply(amb), offset.at(target));
      }
      action[i].set_column(j, image);
    }
  return com_module(A, action, mweight, mnames);
}

KahlerResult kahler_truncated(const GradedAlgebra& A, std::size_t max_weight) {
  KahlerResult out;
  out.presentation = Presentation::weil(A, LabelSet::tangent(), with({}, 1, max_weight));
  for (std::size_t w = 0; w <= out.presentation->max_weight(); ++w) out.dims[{1, w}] = out.presentation->dim(1, w);
  const auto flavor = A->operad().flavor();
  if (flavor == "com") {
    auto oracle = sym_kahler_dims(A, 1, out.presentation->max_weight());
    out.exact = true;
    for (const auto& [key, d] : out.dims) out.exact = out.exact && oracle.at(key) == d;
  } else if (flavor == "pointed") {
    out.exact = true;
    for (const auto& [key, d] : out.dims)
      out.exact = out.exact && d == static_cast<std::size_t>(std::count(A.weight.begin(), A.weight.end(), key.second));
  }
  return out;
}

AdjointBundle adjoint_bundle(const GradedAlgebra& A, PresentationBounds b) {
  return AdjointBundle{A, Presentation::weil(A, LabelSet::tangent(), b)};
}

Report check_d_derivation(const AdjointBundle& T, std::size_t bound) {
  const auto& X = *T.presentation;
  const auto& A = *T.base;
  const auto& P = A.operad();
  const auto& S = X.monad();
  Report r;
  r.subject = "d is a derivation into T°(" + A.operad().name() + "-algebra)";
  auto& c = r.add("d-derivation", "d(mu(a..)) = sum mu(.. d a_i ..) in the quotient");
  std::size_t skipped = 0;
  for (std::size_t n = 0; n <= bound && (!P.max_arity() || n <= *P.max_arity()); ++n)
    for (std::size_t i = 0; i < P.dim(n); ++i)
      for_tuples(A.dim(), n, [&](const std::vector<std::size_t>& w) {
        FreeElement e = T.d(A.evaluate_basis(n, i, w));
        for (std::size_t s = 0; s < n; ++s) {
          std::vector<Var> word(n);
          for (std::size_t j = 0; j < n; ++j) word[j] = X.letter_index(j == s ? 1 : 0, w[j]);
          e -= S.canonicalize(OperadElement::basis(n, i), word);
        }
        try {
          bool ok = X.is_zero(e);
          c.record_lazy(ok, [&] { return P.symbol(n, i) + ": leaves " + X.render(X.normal_form(e)); });
        } catch (const TruncationError&) {
          ++skipped;
        }
      });
  if (skipped) r.add("skipped", "instances outside the computed cells").instances = skipped;
  return r;
}

Report backend_agreement(const GradedAlgebra& A, PresentationBounds b) {
  Report r;
  r.subject = "generic T° engine against closed forms";
  auto X = Presentation::weil(A, LabelSet::tangent(), b);
  const auto flavor = A->operad().flavor();
  const auto W = X->max_weight(), D = b.max_degree;
  if (flavor == "com") {
    auto cells = sym_kahler_cells(A, D, W);
    auto& dims = r.add("sym-kahler-dims", "cells of T°(A) match Sym_A(Omega_A)");
    auto& corr = r.add("generator-correspondence", "a db1..dbk spans each cell bijectively");
    const auto& S = X->monad();
    for (const auto& [key, cell] : cells) {
      auto mine = X->dim(key.first, key.second);
      dims.record_lazy(mine == cell.quotient.dim(), [&] {
        return "cell (" + std::to_string(key.first) + "," + std::to_string(key.second) + "): " + std::to_string(mine) +
               " vs " + std::to_string(cell.quotient.dim());
      });
      Echelon span;
      for (auto rep : cell.quotient.representatives) {
        const auto& [a, m] = cell.terms[rep];
        std::vector<Var> word{X->letter_index(0, a)};
        for (auto x : m) word.push_back(X->letter_index(1, x));
        auto coords = X->coordinates(S.canonicalize(OperadElement::basis(word.size(), 0), word));
        span.insert(coords.count(key) ? coords.at(key) : Vector());
      }
      corr.record_lazy(span.rank() == mine && mine == cell.quotient.dim(), [&] {
        return "cell (" + std::to_string(key.first) + "," + std::to_string(key.second) + "): rank " +
               std::to_string(span.rank());
      });
    }
    auto F = Presentation::free_over_module(kahler_module(A), b);
    auto& free = r.add("free-over-kahler", "Free_A(Omega_A) has the cells of T°(A)");
    for (std::size_t d = 0; d <= D; ++d)
      for (std::size_t w = 0; w <= W; ++w)
        free.record_lazy(F->dim(d, w) == X->dim(d, w), [&] {
          return "cell (" + std::to_string(d) + "," + std::to_string(w) + "): " + std::to_string(F->dim(d, w)) +
                 " vs " + std::to_string(X->dim(d, w));
        });
  } else if (flavor == "pointed") {
    auto& dims = r.add("product-dims", "T°(M) = M x M");
    for (std::size_t d = 0; d <= D; ++d)
      for (std::size_t w = 0; w <= W; ++w) {
        std::size_t expect = d <= 1 ? static_cast<std::size_t>(std::count(A.weight.begin(), A.weight.end(), w)) : 0;
        dims.record_lazy(X->dim(d, w) == expect, [&] {
          return "cell (" + std::to_string(d) + "," + std::to_string(w) + "): " + std::to_string(X->dim(d, w)) +
                 " vs " + std::to_string(expect);
        });
      }
    // a and d a are independent copies of M
    auto& corr = r.add("generator-correspondence", "letters a and d a give the two copies");
    Echelon span;
    std::size_t count = 0;
    for (std::size_t l = 0; l < 2; ++l)
      for (std::size_t a = 0; a < A->dim(); ++a) {
        auto coords = X->coordinates(X->letter_element(X->letter_index(l, a)));
        Vector flat;
        std::size_t off = 0;
        for (std::size_t d = 0; d <= 1; ++d)
          for (std::size_t w = 0; w <= W; ++w) {
            if (coords.count({d, w})) flat += shifted(coords.at({d, w}), off);
            off += X->dim(d, w);
          }
        span.insert(flat);
        ++count;
      }
    corr.record(span.rank() == count, "rank " + std::to_string(span.rank()) + " of " + std::to_string(count));
  } else {
    throw DomainError("no closed form for T° over " + A->operad().name());
  }
  return r;
}

// ---------------------------------------------------------------- free algebras

CellTable free_pair_dims(const FreeMonad& S, std::size_t k, std::size_t max_degree, std::size_t max_weight) {
  CellTable out;
  for (std::size_t d = 0; d <= max_degree; ++d)
    for (std::size_t w = 0; w <= max_weight; ++w) out[{d, w}] = 0;
  for (std::size_t w = 0; w <= max_weight; ++w)
    for (const auto& t : S.basis_terms(w, 2 * k)) {
      auto d = static_cast<std::size_t>(std::count_if(t.word.begin(), t.word.end(), [&](Var v) { return v >= k; }));
      if (d <= max_degree) ++out[{d, w}];
    }
  return out;
}

TauResult check_tau(OperadPtr P, std::size_t k, std::size_t w, std::uint64_t seed, std::size_t samples) {
  TauResult out;
  auto& r = out.report;
  r.subject = "T°(S(P,V)) = S(P,V x V) for " + P->name() + ", dim V = " + std::to_string(k);
  auto A = free_algebra_truncated(P, k, w);
  auto X = Presentation::weil(A, LabelSet::tangent(), with({}, w, w));
  const auto& S = X->monad();
  auto terms = S.basis_terms_up_to(w, k);
  std::vector<FreeElement> images(X->letter_count());
  for (std::size_t i = 0; i < X->letter_count(); ++i) {
    const auto& L = X->letter(i);
    images[i] = L.label == 0 ? FreeElement(terms[L.base]) : S.diff(FreeElement(terms[L.base]), k);
  }
  auto tau = [&](const FreeElement& e) {
    return S.mult(S.map<Var, FreeTerm>(e, [&](const Var& v) { return images.at(v); }));
  };

  auto& wd = r.add("well-defined", "generating relations map to zero");
  for (const auto& s : X->seeds(w, w, generator_arity(*P))) {
    auto img = tau(s.relation);
    wd.record_lazy(img.is_zero(), [&] { return s.label + " maps to " + render_free(*P, img, BasedModule::coordinates(2 * k, "x")); });
  }

  out.free_dims = free_pair_dims(S, k, w, w);
  out.presentation_dims = X->cell_dims();
  auto& dims = r.add("cell-dims", "cell dimensions agree");
  auto& bij = r.add("bijective", "tau is invertible on every cell");
  for (const auto& [key, fd] : out.free_dims) {
    auto xd = out.presentation_dims.at(key);
    auto where = "cell (" + std::to_string(key.first) + "," + std::to_string(key.second) + ")";
    dims.record_lazy(xd == fd, [&] { return where + ": " + std::to_string(xd) + " vs " + std::to_string(fd); });
    std::map<FreeTerm, std::size_t> idx;
    for (const auto& t : S.basis_terms(key.second, 2 * k)) idx.emplace(t, idx.size());
    Echelon span;
    for (std::size_t i = 0; i < xd; ++i) {
      Vector v;
      for (const auto& [t, c] : tau(X->representative(key, i))) {
        auto it = idx.find(t);
        if (it == idx.end()) {
          v.add(idx.size() + 1000000, c);  // outside the cell: cannot be part of a bijection
        } else {
          v.add(it->second, c);
        }
      }
      span.insert(v);
    }
    bij.record_lazy(span.rank() == xd && xd == fd, [&] { return where + ": rank " + std::to_string(span.rank()); });
  }

  auto& mult = r.add("multiplicative", "tau(mu(a, b)) = mu(tau a, tau b) on random representatives");
  std::vector<CellKey> nonempty;
  for (const auto& [key, d] : out.presentation_dims)
    if (d) nonempty.push_back(key);
  std::mt19937_64 rng(seed);
  auto gens = P->generators();
  std::size_t attempts = 0;
  while (mult.instances < samples && attempts++ < 50 * samples && !nonempty.empty()) {
    const auto& g = gens[rng() % gens.size()];
    if (g.arity == 0) continue;
    std::vector<FreeElement> args;
    std::size_t dd = 0, ww = 0;
    for (std::size_t s = 0; s < g.arity; ++s) {
      auto key = nonempty[rng() % nonempty.size()];
      args.push_back(X->representative(key, rng() % out.presentation_dims.at(key)));
      dd += key.first;
      ww += key.second;
    }
    if (dd > w || ww > w) continue;
    auto op = OperadElement::basis(g.arity, g.basis_index);
    auto lhs = tau(X->normal_form(S.apply(op, args)));
    std::vector<FreeElement> targs;
    for (const auto& a : args) targs.push_back(tau(a));
    auto rhs = S.apply(op, targs);
    mult.record_lazy(lhs == rhs, [&] { return g.name + " on " + X->render(args[0]); });
  }
  return out;
}

// ---------------------------------------------------------------- adjunction

LinearMap adjunction_unit(const GradedAlgebra& A, const Materialized& TA) {
  const auto& X = *TA.presentation;
  const std::size_t n = TA.algebra->dim();
  LinearMap eta(A->dim(), 2 * n);
  for (std::size_t a = 0; a < A->dim(); ++a)
    eta.set_column(a, TA.embed(X.lift(0, Vector(a))) + shifted(TA.embed(X.lift(1, Vector(a))), n));
  return eta;
}

AlgebraMap adjunction_counit(PresentationPtr TTB, AlgebraPtr B) {
  const std::size_t k = B->dim();
  if (TTB->base()->dim() != 2 * k || TTB->labels().size() != 2) throw InputError("counit needs T°(T B)");
  AlgebraMap eps{"eps", TTB, B, {}};
  for (std::size_t i = 0; i < TTB->letter_count(); ++i) {
    const auto& L = TTB->letter(i);
    if (L.label == 0)
      eps.images.push_back(L.base < k ? Vector(L.base) : Vector());
    else
      eps.images.push_back(L.base >= k ? Vector(L.base - k) : Vector());
  }
  return eps;
}

Report check_adjunction(const GradedAlgebra& A, PresentationBounds b) {
  Report r;
  r.subject = "adjunction T° -| T for a " + A->operad().name() + "-algebra";
  const auto D = std::max<std::size_t>(b.max_degree, 1);
  b.max_degree = D;
  auto TA = Presentation::weil(A, LabelSet::tangent(), b);
  auto M = materialize(TA, D, TA->max_weight());
  auto TM = graded_tangent_bundle(M.algebra);
  auto eta = adjunction_unit(A, M);
  const auto gar = generator_arity(A->operad());
  auto& unit = r.add("unit-morphism", "eta: A -> T(T°A) is a morphism");
  absorb(unit, check_morphism(*A, *TM, eta, gar), "eta");

  // eps_{T°A} o T°(eta) = 1
  auto TTM = Presentation::weil(TM, LabelSet::tangent(), with(b, 1, GradedAlgebra::unbounded));
  auto eps = adjunction_counit(TTM, M.algebra.algebra);
  auto& counit = r.add("counit-well-defined", "eps respects the relations of T°(T B)");
  absorb(counit, check_well_defined(eps), "eps on T°(T(T°A))");
  auto Teta = functorial_map("T°(eta)", TA, TTM, eta);
  auto lhs = compose(eps, Teta);
  AlgebraMap id{"1", TA, M.algebra.algebra, {}};
  for (std::size_t i = 0; i < TA->letter_count(); ++i) id.images.push_back(M.embed(TA->letter_element(i)));
  auto& tri1 = r.add("triangle-1", "eps_{T°A} o T°(eta_A) = 1");
  std::string why;
  tri1.record(equal_on_letters(lhs, id, &why), why);

  // T(eps_A) o eta_{TA} = 1
  auto TB = graded_tangent_bundle(A);
  auto TTB = Presentation::weil(TB, LabelSet::tangent(), b);
  auto MB = materialize(TTB, D, TTB->max_weight());
  auto eps_a = adjunction_counit(TTB, A.algebra);
  absorb(counit, check_well_defined(eps_a), "eps on T°(T A)");
  auto eta_tb = adjunction_unit(TB, MB);
  const std::size_t n = MB.algebra->dim(), k = A->dim();
  LinearMap Teps(2 * n, 2 * k);
  for (std::size_t v = 0; v < n; ++v) {
    auto e = evaluate(eps_a, MB.element(Vector(v)));
    Teps.set_column(v, e);
    Teps.set_column(n + v, shifted(e, k));
  }
  auto& tri2 = r.add("triangle-2", "T(eps_A) o eta_{TA} = 1");
  tri2.record(Teps.compose(eta_tb) == LinearMap::identity(2 * k), "composite differs from the identity");
  return r;
}

LinearMap hom_flat(const AlgebraMap& f) {
  const auto& X = *f.source;
  const std::size_t k = X.base()->dim(), m = f.target->dim();
  LinearMap g(k, 2 * m);
  for (std::size_t a = 0; a < k; ++a)
    g.set_column(a, f.images.at(X.letter_index(0, a)) + shifted(f.images.at(X.letter_index(1, a)), m));
  return g;
}

AlgebraMap hom_sharp(PresentationPtr TA, AlgebraPtr B, const LinearMap& g) {
  const auto& A = *TA->base();
  const std::size_t m = B->dim();
  auto rep = check_morphism(A, tangent_bundle(*B), g, generator_arity(A.operad()));
  if (!rep.passed()) throw DomainError("not a morphism into T(B): " + failures(rep));
  AlgebraMap f{"g#", TA, B, std::vector<Vector>(TA->letter_count())};
  for (std::size_t a = 0; a < A.dim(); ++a) {
    f.images[TA->letter_index(0, a)] = truncated(g.column(a), 0, m);
    f.images[TA->letter_index(1, a)] = truncated(g.column(a), m, 2 * m, m);
  }
  return f;
}

// ---------------------------------------------------------------- structure maps

AdjointTangentMaps adjoint_tangent_maps() {
  const Scalar one(1), minus(-1);
  AdjointTangentMaps m;
  m.p = {{{0, one}}};
  m.z = {{{0, one}}, {}};
  m.s = {{{0, one}}, {{1, one}, {2, one}}};
  m.q1 = {{{0, one}}, {{1, one}}};
  m.q2 = {{{0, one}}, {{2, one}}};
  m.n = {{{0, one}}, {{1, minus}}};
  m.l = {{{0, one}}, {}, {}, {{1, one}}};
  m.c = {{{0, one}}, {{2, one}}, {{1, one}}, {{3, one}}};
  return m;
}

namespace {

// T°(f) for f between iterated label sets with r and s marks: the new
// outermost mark passes to the outermost mark of the target.
LabelImages outer_lift(const LabelImages& f, unsigned r, unsigned s) {
  LabelImages out(std::size_t{1} << (r + 1));
  for (unsigned m = 0; m < out.size(); ++m)
    for (const auto& [t, c] : f.at(m & ((1u << r) - 1)))
      out[m].push_back({(m >> r) & 1u ? t | (1u << s) : t, c});
  return out;
}

// f_{T°}: f applied over the base T°A, the innermost mark passes through.
LabelImages inner_lift(const LabelImages& f, unsigned r) {
  LabelImages out(std::size_t{1} << (r + 1));
  for (unsigned m = 0; m < out.size(); ++m)
    for (const auto& [t, c] : f.at(m >> 1)) out[m].push_back({(t << 1) | (m & 1u), c});
  return out;
}

// Relabel the masks of a table.
LabelImages relabel(const LabelImages& f, const std::map<unsigned, unsigned>& to) {
  LabelImages out = f;
  for (auto& row : out)
    for (auto& [t, c] : row) t = to.at(t);
  return out;
}

}  // namespace

Report check_adjoint_tangent_equations(const GradedAlgebra& A, const AdjointTangentMaps& m,
                                       const AdjointSuiteOptions& opt) {
  Report r;
  r.subject = "adjoint tangent structure on " + A->operad().name() + "-algebras";
  const auto W = opt.bounds.max_weight;
  auto make = [&](LabelSet L, std::size_t degree) { return Presentation::weil(A, std::move(L), with(opt.bounds, degree, W)); };
  auto P0 = make(LabelSet::point(), 0);
  auto T1 = make(LabelSet::tangent(), 1);
  auto T2 = make(LabelSet::pullback(2), 2);
  auto T3 = make(LabelSet::pullback(3), 3);
  auto TT = make(LabelSet::iterated(2), 2);
  auto TTT = make(LabelSet::iterated(3), 3);

  auto p = label_map("p°", P0, T1, m.p);
  auto z = label_map("z°", T1, P0, m.z);
  auto s = label_map("s°", T1, T2, m.s);
  auto q1 = label_map("q1°", T1, T2, m.q1);
  auto q2 = label_map("q2°", T1, T2, m.q2);
  auto n = label_map("n°", T1, T1, m.n);
  auto l = label_map("l°", TT, T1, m.l);
  auto c = label_map("c°", TT, TT, m.c);

  for (const auto* f : {&p, &z, &s, &q1, &q2, &n, &l, &c}) {
    auto name = f->name.substr(0, f->name.find("°"));
    auto& chk = r.add("morphism-" + name, f->name + " respects the relations");
    absorb(chk, check_well_defined(*f), f->name);
  }

  const Scalar one(1);
  auto id1 = identity_map(T1), idP = identity_map(P0), idTT = identity_map(TT);
  auto zp = compose(p, z);
  // pairings T°2A -> T°A out of maps T°A -> T°A: d1 -> f(d), d2 -> g(d)
  auto pairing = [&](std::string name, const PresentationMap& f, const PresentationMap& g) {
    PresentationMap out{std::move(name), T2, T1, {}};
    for (std::size_t i = 0; i < T2->letter_count(); ++i) {
      const auto& L = T2->letter(i);
      const auto& src = L.label == 2 ? g : f;
      out.images.push_back(src.images.at(T1->letter_index(L.label == 0 ? 0 : 1, L.base)));
    }
    return out;
  };
  auto unit_pair = pairing("<1,p°z°>", id1, zp);
  auto unit_pair2 = pairing("<p°z°,1>", zp, id1);
  auto inverse_pair = pairing("<1,n°>", id1, n);
  auto swap = label_map("swap°", T2, T2, {{{0, one}}, {{2, one}}, {{1, one}}});
  auto s_left = label_map("(s x 1)°", T2, T3, {m.s[0], m.s[1], {{4, one}}});
  auto s_right = label_map("(1 x s)°", T2, T3, {m.s[0], {{1, one}}, relabel(m.s, {{0, 0}, {1, 2}, {2, 4}})[1]});
  auto Tp = label_map("T°(p°)", T1, TT, outer_lift(m.p, 0, 1));
  auto pT = label_map("p°_T", T1, TT, inner_lift(m.p, 0));
  auto Tc = label_map("T°(c°)", TTT, TTT, outer_lift(m.c, 2, 2));
  auto cT = label_map("c°_T", TTT, TTT, inner_lift(m.c, 2));
  auto Tl = label_map("T°(l°)", TTT, TT, outer_lift(m.l, 2, 1));
  auto lT = label_map("l°_T", TTT, TT, inner_lift(m.l, 2));

  auto eq = [&](const std::string& name, const std::string& statement, const PresentationMap& f,
                const PresentationMap& g) {
    auto& chk = r.add(name, statement);
    std::string why;
    try {
      bool ok = equal_on_letters(f, g, &why);
      chk.record(ok, f.name + " vs " + g.name + ": " + why);
    } catch (const TruncationError& e) {
      chk.record(false, std::string("truncated: ") + e.what());
    }
  };
  eq("p.z", "z° o p° = 1", compose(z, p), idP);
  eq("p.s", "s° o p° = q1° o p°", compose(s, p), compose(q1, p));
  eq("p.q", "q1° o p° = q2° o p°", compose(q1, p), compose(q2, p));
  eq("q-pairing-1", "<1,p°z°> o q1° = 1", compose(unit_pair, q1), id1);
  eq("q-pairing-2", "<1,p°z°> o q2° = p° o z°", compose(unit_pair, q2), zp);
  eq("q-pairing-3", "<p°z°,1> o q2° = 1", compose(unit_pair2, q2), id1);
  eq("s-commutative", "swap° o s° = s°", compose(swap, s), s);
  eq("s-unit", "<1,p°z°> o s° = 1", compose(unit_pair, s), id1);
  eq("s-associative", "(s x 1)° o s° = (1 x s)° o s°", compose(s_left, s), compose(s_right, s));
  eq("s-inverse", "<1,n°> o s° = p° o z°", compose(inverse_pair, s), zp);
  eq("pT.l", "l° o p°_T = p° o z°", compose(l, pT), zp);
  eq("Tp.l", "l° o T°(p°) = p° o z°", compose(l, Tp), zp);
  eq("c.c", "c° o c° = 1", compose(c, c), idTT);
  eq("c.l", "l° o c° = l°", compose(l, c), l);
  eq("Tp.c", "c° o T°(p°) = p°_T", compose(c, Tp), pT);
  eq("c-hexagon", "c°_T T°(c°) c°_T = T°(c°) c°_T T°(c°)", compose(cT, compose(Tc, cT)), compose(Tc, compose(cT, Tc)));
  eq("l-coassociative", "l° o T°(l°) = l° o l°_T", compose(l, Tl), compose(l, lT));
  eq("l-c", "T°(l°) o c°_T o T°(c°) = c° o l°_T", compose(Tl, compose(cT, Tc)), compose(c, lT));

  for (std::size_t e = 0; e < opt.endomorphisms.size(); ++e) {
    const auto& f = opt.endomorphisms[e];
    auto tag = "naturality[" + std::to_string(e) + "] ";
    auto fP = functorial_map("f", P0, P0, f);
    auto f1 = functorial_map("T°(f)", T1, T1, f);
    auto f2 = functorial_map("T°2(f)", T2, T2, f);
    auto fTT = functorial_map("T°T°(f)", TT, TT, f);
    auto& wd = r.add(tag + "T(f)", "T°(f) respects the relations");
    absorb(wd, check_well_defined(f1), "T°(f)");
    eq(tag + "z", "z° o T°(f) = f o z°", compose(z, f1), compose(fP, z));
    eq(tag + "s", "s° o T°(f) = T°2(f) o s°", compose(s, f1), compose(f2, s));
    eq(tag + "l", "l° o T°T°(f) = T°(f) o l°", compose(l, fTT), compose(f1, l));
    eq(tag + "c", "c° o T°T°(f) = T°T°(f) o c°", compose(c, fTT), compose(fTT, c));
  }
  return r;
}

// ---------------------------------------------------------------- vector fields

AlgebraMap adjoint_vf_sharp(PresentationPtr TA, AlgebraPtr A, const LinearMap& v) {
  auto D = derivation_from_vector_field(*A, v);
  AlgebraMap f{"v#", TA, A, std::vector<Vector>(TA->letter_count())};
  for (std::size_t a = 0; a < A->dim(); ++a) {
    f.images[TA->letter_index(0, a)] = Vector(a);
    f.images[TA->letter_index(1, a)] = D.column(a);
  }
  return f;
}

AlgebraMap adjoint_vf_sharp_via_counit(PresentationPtr TA, AlgebraPtr A, const LinearMap& v) {
  derivation_from_vector_field(*A, v);  // validates v
  auto TTA = Presentation::weil(graded_tangent_bundle(TA->base()), LabelSet::tangent(), TA->bounds());
  auto Tv = functorial_map("T°(v)", TA, TTA, v);
  auto f = compose(adjunction_counit(TTA, A), Tv);
  f.name = "eps o T°(v)";
  return f;
}

LinearMap adjoint_vf_flat(const AlgebraMap& w) {
  const auto& X = *w.source;
  for (std::size_t a = 0; a < X.base()->dim(); ++a)
    if (!(w.images.at(X.letter_index(0, a)) == Vector(a))) throw DomainError("w does not fix " + X.base()->carrier().name(a));
  auto rep = check_well_defined(w);
  if (!rep.passed()) throw DomainError("w is not an algebra map: " + failures(rep));
  return hom_flat(w);
}

// ---------------------------------------------------------------- differential objects

namespace {

// zeta: A -> Z, unit: Z -> A, ell: T°A -> A.
Report diff_object_equalities(const std::string& subject, PresentationPtr TA, const PAlgebra& Z, const LinearMap& zeta,
                              const LinearMap& unit, const AlgebraMap& ell) {
  Report r;
  r.subject = subject;
  const auto& A = *TA->base();
  auto& zm = r.add("zeta-morphism", "zeta°: A -> P(0) is a morphism");
  absorb(zm, check_morphism(A, Z, zeta, generator_arity(A.operad())), "zeta°");
  auto& wd = r.add("lift-well-defined", "l°: T°A -> A respects the relations");
  absorb(wd, check_well_defined(ell), "l°");
  auto& e1 = r.add("E1", "l°(a) = zeta°(a)_A");
  auto& e2 = r.add("E2", "zeta°(zeta°(a)_A)_A = zeta°(a)_A");
  auto& e3 = r.add("E3", "zeta°(l°(d a))_A = 0");
  auto& e4 = r.add("E4", "l°(zeta°(a)_A) = zeta°(a)_A");
  auto& e5 = r.add("E5", "l°(d(l°(d a))) = l°(d a)");
  auto zA = unit.compose(zeta);
  for (std::size_t a = 0; a < A.dim(); ++a) {
    const auto& name = A.carrier().name(a);
    auto za = zA.column(a);
    auto la = evaluate(ell, TA->lift(0, Vector(a)));
    auto lda = evaluate(ell, TA->lift(1, Vector(a)));
    e1.record(la == za, name);
    e2.record(zA.apply(za) == za, name);
    e3.record(zA.apply(lda).is_zero(), name);
    e4.record(evaluate(ell, TA->lift(0, za)) == za, name);
    e5.record(evaluate(ell, TA->lift(1, lda)) == lda, name);
  }
  return r;
}

}  // namespace

Report check_free_differential_object(OperadPtr P, std::size_t k, std::size_t w, bool literal_lift) {
  auto A = free_algebra_truncated(P, k, w);
  auto TA = Presentation::weil(A, LabelSet::tangent(), with({}, 1, w));
  FreeMonad S(P);
  auto terms = S.basis_terms_up_to(w, k);
  auto Z = initial_algebra(P);
  LinearMap zeta(A->dim(), Z.dim()), unit(Z.dim(), A->dim());
  for (std::size_t a = 0; a < terms.size(); ++a)
    if (terms[a].arity == 0) {
      zeta.set_column(a, Vector(terms[a].op));
      unit.set_column(terms[a].op, Vector(a));
    }
  AlgebraMap ell{literal_lift ? "l° (every arity)" : "l°", TA, A.algebra, {}};
  for (std::size_t i = 0; i < TA->letter_count(); ++i) {
    const auto& L = TA->letter(i);
    const auto ar = terms[L.base].arity;
    bool keep = L.label == 0 ? ar == 0 : (literal_lift ? ar >= 1 : ar == 1);
    ell.images.push_back(keep ? Vector(L.base) : Vector());
  }
  return diff_object_equalities("free " + P->name() + "-algebra on " + std::to_string(k) + " generators as a differential object",
                                TA, Z, zeta, unit, ell);
}

Report diff_object_from_p0_module(const AlgebraModule& M, std::size_t max_degree) {
  {
    const auto& P = M.extension->operad();
    auto Z0 = initial_algebra(M.extension->operad_ptr());
    LinearMap incl(Z0.dim(), M.extension->dim());
    for (std::size_t i = 0; i < Z0.dim(); ++i) incl.set_column(i, Vector(i));
    bool ok = M.base_dim == P.dim(0) && std::all_of(M.extension.weight.begin(), M.extension.weight.end(),
                                                      [](std::size_t w) { return w == 0; });
    if (!ok || !check_morphism(Z0, *M.extension, incl, generator_arity(P)).passed())
      throw DomainError("expected a module over P(0) = " + std::to_string(P.dim(0)) +
                        "-dimensional initial algebra, ungraded");
  }
  auto X =Presentation::free_over_module(M, with({}, max_degree, 0));
  auto F = materialize(X, max_degree, 0);
  const auto& P = M.extension->operad_ptr();
  auto Z = initial_algebra(P);
  const std::size_t base = M.base_dim;
  auto TF = Presentation::weil(F.algebra, LabelSet::tangent(), with({}, 1, max_degree));
  const std::size_t n = F.algebra->dim();
  std::vector<std::size_t> degree(n);
  for (const auto& [key, off] : F.offset)
    for (std::size_t i = 0; i < X->dim(key.first, key.second); ++i) degree[off + i] = key.first;
  LinearMap zeta(n, Z.dim()), unit(Z.dim(), n);
  for (std::size_t v = 0; v < n; ++v)
    if (degree[v] == 0) zeta.set_column(v, truncated(M.extension->theta(F.element(Vector(v))), 0, base));
  for (std::size_t i = 0; i < base; ++i) unit.set_column(i, F.embed(X->letter_element(i)));
  AlgebraMap ell{"l°", TF, F.algebra.algebra, {}};
  for (std::size_t i = 0; i < TF->letter_count(); ++i) {
    const auto& L = TF->letter(i);
    bool keep = degree[L.base] == (L.label == 0 ? 0u : 1u);
    ell.images.push_back(keep ? Vector(L.base) : Vector());
  }
  return diff_object_equalities("Free_{P(0)}(M) over " + P->name(), TF, Z, zeta, unit, ell);
}

}  // namespace operadiff
