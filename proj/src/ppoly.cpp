#include "operadiff/ppoly.hpp"

#include <sstream>

namespace operadiff {

namespace {

std::size_t max_arity_of(const FreeElement& e) {
  std::size_t m = 0;
  for (const auto& [t, c] : e) m = std::max(m, t.arity);
  return m;
}

// Substitutes variable v by images(v) in every component.
PPolyMap substitute(const FreeMonad& S, const PPolyMap& f, std::size_t new_source,
                    const std::function<Vector(const Var&)>& images) {
  PPolyMap out{new_source, f.target, {}};
  for (const auto& c : f.components) out.components.push_back(S.map<Var, Var>(c, images));
  return out;
}

}  // namespace

PPolyMap ppoly_identity(const FreeMonad& S, std::size_t n) { return ppoly_projection(S, n, 0, n); }

PPolyMap ppoly_projection(const FreeMonad& S, std::size_t n, std::size_t first, std::size_t count) {
  if (first + count > n) throw InputError("projection outside the source");
  PPolyMap out{n, count, {}};
  for (std::size_t i = 0; i < count; ++i) out.components.push_back(S.unit(first + i));
  return out;
}

PPolyMap ppoly_pair(const PPolyMap& f, const PPolyMap& g) {
  if (f.source != g.source) throw InputError("pairing maps with different sources");
  PPolyMap out = f;
  out.target += g.target;
  out.components.insert(out.components.end(), g.components.begin(), g.components.end());
  return out;
}

PPolyMap ppoly_linear(const FreeMonad& S, const LinearMap& L) {
  PPolyMap out{L.domain_dim(), L.codomain_dim(), std::vector<FreeElement>(L.codomain_dim())};
  for (std::size_t j = 0; j < L.domain_dim(); ++j)
    for (const auto& [i, c] : L.column(j)) out.components[i].add(S.unit(j), c);
  return out;
}

PPolyMap ppoly_compose(const FreeMonad& S, const PPolyMap& g, const PPolyMap& f, std::size_t arity_cap) {
  if (g.source != f.target)
    throw InputError("cannot compose: source " + std::to_string(g.source) + " differs from target " +
                     std::to_string(f.target));
  std::vector<std::size_t> arity(f.target);
  for (std::size_t j = 0; j < f.target; ++j) arity[j] = max_arity_of(f.components[j]);
  for (const auto& c : g.components)
    for (const auto& [t, coef] : c) {
      std::size_t total = 0;
      for (auto v : t.word) total += arity[v];
      if (total > arity_cap)
        throw TruncationError("composite has terms of arity " + std::to_string(total) + " above the cap " +
                              std::to_string(arity_cap));
    }
  PPolyMap out{f.source, g.target, {}};
  for (const auto& c : g.components)
    out.components.push_back(S.mult(S.map<Var, FreeTerm>(c, [&](const Var& v) { return f.components[v]; })));
  return out;
}

PPolyMap ppoly_diff(const FreeMonad& S, const PPolyMap& f, const DiffFn& d) {
  PPolyMap out{2 * f.source, f.target, {}};
  for (const auto& c : f.components) out.components.push_back(d ? d(c, f.source) : S.diff(c, f.source));
  return out;
}

BasedModule ppoly_variables(std::size_t n, bool doubled) {
  BasedModule base = n == 1 ? BasedModule({"x"}) : BasedModule::coordinates(n);
  if (!doubled) return base;
  return BasedModule::power(base, {"", "d"});
}

std::string render_ppoly(const Operad& P, const PPolyMap& f, const BasedModule& vars) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < f.components.size(); ++i) os << (i ? ", " : "") << render_free(P, f.components[i], vars);
  os << ">";
  return os.str();
}

PPolyMap random_ppoly(RandomFree& R, const FreeMonad& S, std::size_t n, std::size_t m, std::size_t max_arity) {
  PPolyMap out{n, m, {}};
  for (std::size_t i = 0; i < m; ++i) out.components.push_back(R.element(S, n, max_arity));
  return out;
}

Report check_cdc_properties(const FreeMonad& S, const CdcOptions& opt) {
  const auto& P = S.operad();
  Report r;
  r.subject = "differential category properties of " + P.name() + "-POLY";
  auto& chain = r.add("chain-rule", "D[g o f] = D[g] o <f o pi1, D[f]>");
  auto& additive = r.add("tangent-additivity", "D[f](x, a + b) = D[f](x, a) + D[f](x, b), D[f](x, 0) = 0");
  auto& linear = r.add("linear-maps", "D[L](x, dx) = L(dx)");
  auto& symmetry = r.add("second-derivative-symmetry", "D[D[f]] o <pi1,pi3,pi2,pi4> = D[D[f]]");
  auto& lift = r.add("lift", "D[D[f]](x, 0, 0, dx) = D[f](x, dx)");
  auto& assoc = r.add("associativity", "h o (g o f) = (h o g) o f");
  auto& ident = r.add("identity", "f o id = f = id o f");
  auto& product = r.add("product", "pi1 o <f, g> = f, pi2 o <f, g> = g");

  RandomFree R(opt.seed * 1000003 + 61);
  auto D = [&](const PPolyMap& f) { return ppoly_diff(S, f, opt.diff); };
  auto show = [&](const PPolyMap& f, bool doubled) { return render_ppoly(P, f, ppoly_variables(f.source / (doubled ? 2 : 1), doubled)); };
  for (std::size_t t = 0; t < opt.trials; ++t) {
    const std::size_t n = 1 + R.below(2), m = 1 + R.below(2), k = 1 + R.below(2);
    auto f = random_ppoly(R, S, n, m, opt.max_arity);
    auto g = random_ppoly(R, S, m, k, opt.max_arity);
    auto h = random_ppoly(R, S, k, 1 + R.below(2), opt.max_arity);

    auto lhs = D(ppoly_compose(S, g, f));
    auto f_on_points = substitute(S, f, 2 * n, [](const Var& v) { return Vector(v); });
    auto rhs = ppoly_compose(S, D(g), ppoly_pair(f_on_points, D(f)));
    chain.record_lazy(lhs == rhs, [&] {
      return "f = " + show(f, false) + ", g = " + show(g, false) + "; lhs " + show(lhs, true) + "; rhs " + show(rhs, true);
    });

    auto Df = D(f);
    // variables of R^{3n}: x, a, b
    auto sum = substitute(S, Df, 3 * n, block_map(n, {{1, 0, 0}, {0, 1, 1}}));
    auto parts = substitute(S, Df, 3 * n, block_map(n, {{1, 0, 0}, {0, 1, 0}}));
    auto second = substitute(S, Df, 3 * n, block_map(n, {{1, 0, 0}, {0, 0, 1}}));
    for (std::size_t i = 0; i < m; ++i) parts.components[i] += second.components[i];
    auto at_zero = substitute(S, Df, 2 * n, block_map(n, {{1, 0}, {0, 0}}));
    bool zero = true;
    for (const auto& c : at_zero.components) zero = zero && c.is_zero();
    additive.record_lazy(sum == parts && zero, [&] { return "f = " + show(f, false); });

    auto L = R.linear_map(n, m);
    auto DL = D(ppoly_linear(S, L));
    auto expected = substitute(S, ppoly_linear(S, L), 2 * n, [n](const Var& v) { return Vector(v + n); });
    linear.record_lazy(DL == expected, [&] { return "D[L] = " + show(DL, true) + ", expected " + show(expected, true); });

    auto DDf = D(Df);
    auto swapped = substitute(S, DDf, 4 * n, block_map(n, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
    symmetry.record_lazy(swapped == DDf, [&] { return "f = " + show(f, false); });

    auto lifted = substitute(S, DDf, 2 * n, block_map(n, {{1, 0}, {0, 0}, {0, 0}, {0, 1}}));
    lift.record_lazy(lifted == Df, [&] { return "f = " + show(f, false) + "; got " + show(lifted, true); });

    auto a1 = ppoly_compose(S, h, ppoly_compose(S, g, f));
    auto a2 = ppoly_compose(S, ppoly_compose(S, h, g), f);
    assoc.record_lazy(a1 == a2, [&] { return "f = " + show(f, false) + ", g = " + show(g, false) + ", h = " + show(h, false); });

    bool id_ok = ppoly_compose(S, f, ppoly_identity(S, n)) == f && ppoly_compose(S, ppoly_identity(S, m), f) == f;
    ident.record_lazy(id_ok, [&] { return "f = " + show(f, false); });

    auto g2 = random_ppoly(R, S, n, k, opt.max_arity);
    auto pr = ppoly_pair(f, g2);
    bool prod_ok = ppoly_compose(S, ppoly_projection(S, m + k, 0, m), pr) == f &&
                   ppoly_compose(S, ppoly_projection(S, m + k, m, k), pr) == g2;
    product.record_lazy(prod_ok, [&] { return "f = " + show(f, false) + ", g = " + show(g2, false); });
  }
  return r;
}

}  // namespace operadiff
