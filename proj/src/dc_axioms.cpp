#include "operadiff/dc_axioms.hpp"

#include <sstream>

namespace operadiff {

namespace {

BasedModule module_for(std::size_t k, std::size_t copies) {
  BasedModule base = k == 1 ? BasedModule({"x"}) : BasedModule::coordinates(k);
  static const std::vector<std::string> prefixes{"", "d", "d'", "d'd", "e", "ed", "ed'", "ed'd"};
  return BasedModule::power(base, std::vector<std::string>(prefixes.begin(), prefixes.begin() + static_cast<std::ptrdiff_t>(copies)));
}

std::string witness(const Operad& P, const FreeElement& in, const BasedModule& Vin, const FreeElement& lhs,
                    const FreeElement& rhs, const BasedModule& Vout) {
  return "input " + render_free(P, in, Vin) + "; lhs " + render_free(P, lhs, Vout) + "; rhs " +
         render_free(P, rhs, Vout);
}

std::vector<FreeElement> instances(const FreeMonad& S, std::size_t k, const AxiomOptions& opt, std::uint64_t salt) {
  auto out = basis_instances(S, k, opt.arity_bound);
  RandomFree R(opt.seed * 1000003 + salt);
  for (std::size_t t = 0; t < opt.trials; ++t) out.push_back(R.element(S, k, opt.arity_bound));
  return out;
}

std::vector<Free<FreeTerm>> nested_instances(const FreeMonad& S, std::size_t k, const AxiomOptions& opt,
                                             std::uint64_t salt) {
  auto out = nested_basis_instances(S, k, opt.arity_bound);
  RandomFree R(opt.seed * 1000003 + salt);
  for (std::size_t t = 0; t < opt.trials; ++t) out.push_back(R.nested(S, k, opt.arity_bound));
  return out;
}

DiffFn default_diff(const FreeMonad& S, const AxiomOptions& opt) {
  if (opt.diff) return opt.diff;
  return [&S](const FreeElement& e, std::size_t k) { return S.diff(e, k); };
}

// Multisets of size m over an alphabet, as index vectors.
template <class F>
void for_multisets(std::size_t letters, std::size_t m, F&& f) {
  std::vector<std::size_t> w(m, 0);
  if (m > 0 && letters == 0) return;
  while (true) {
    f(w);
    std::size_t i = m;
    while (i > 0 && w[i - 1] == letters - 1) --i;
    if (i == 0) return;
    ++w[i - 1];
    for (std::size_t j = i; j < m; ++j) w[j] = w[i - 1];
  }
}

template <class T>
std::vector<Term<T>> outer_terms_over(const FreeMonad& S, const std::vector<T>& alphabet, std::size_t max_outer,
                                      const std::function<std::size_t(const T&)>& weight, std::size_t bound) {
  std::vector<Term<T>> out;
  for (std::size_t m = 0; m <= max_outer; ++m) {
    if (S.operad().dim(m) == 0) continue;
    for_multisets(alphabet.size(), m, [&](const std::vector<std::size_t>& idx) {
      std::size_t total = 0;
      std::vector<T> word;
      for (auto i : idx) {
        total += weight(alphabet[i]);
        word.push_back(alphabet[i]);
      }
      if (total > bound) return;
      for (auto& t : S.basis_for_word(word)) out.push_back(std::move(t));
    });
  }
  return out;
}

FreeElement unit_image(const FreeMonad& S, const Vector& v) {
  FreeElement out;
  for (const auto& [i, c] : v) out.add(S.unit(i), c);
  return out;
}

}  // namespace

std::function<Vector(const Var&)> block_map(std::size_t k, std::vector<std::vector<int>> m) {
  return [k, m = std::move(m)](const Var& v) {
    Vector out;
    const auto& row = m.at(v / k);
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j] != 0) out.add(j * k + v % k, Scalar(static_cast<long>(row[j])));
    return out;
  };
}

std::vector<FreeElement> basis_instances(const FreeMonad& S, std::size_t k, std::size_t bound) {
  std::vector<FreeElement> out;
  for (const auto& t : S.basis_terms_up_to(bound, k)) out.emplace_back(t);
  return out;
}

std::vector<Free<FreeTerm>> nested_basis_instances(const FreeMonad& S, std::size_t k, std::size_t bound) {
  auto alphabet = S.basis_terms_up_to(std::min<std::size_t>(2, bound), k);
  std::function<std::size_t(const FreeTerm&)> weight = [](const FreeTerm& t) { return t.arity; };
  std::vector<Free<FreeTerm>> out;
  for (const auto& t : outer_terms_over<FreeTerm>(S, alphabet, 3, weight, bound)) out.emplace_back(t);
  return out;
}

std::string render_nested(const Operad& P, const Free<FreeTerm>& e, const BasedModule& V) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : e) {
    os << (first ? "" : " + ");
    if (!c.is_one()) os << c << "*";
    os << P.symbol(t.arity, t.op) << "(";
    for (std::size_t i = 0; i < t.word.size(); ++i)
      os << (i ? ", " : "") << render_term(P, t.word[i], V);
    os << ")";
    first = false;
  }
  return os.str();
}

Report check_dc_axioms(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  const auto d = default_diff(S, opt);
  const auto V1 = module_for(k, 1), V2 = module_for(k, 2), V3 = module_for(k, 3), V4 = module_for(k, 4);
  Report r;
  r.subject = "differential combinator axioms for " + P.name();
  auto& dc1 = r.add("DC.1", "S(pi1) o d = 0");
  auto& dc2 = r.add("DC.2", "S(<pi1,pi2,pi2>) o d = S(<pi1,pi2,0>) o d + S(<pi1,0,pi2>) o d");
  auto& dc3 = r.add("DC.3", "d o eta = eta o <0,1>");
  auto& dc4 = r.add("DC.4", "d o gamma = gamma o S(S(<1,0>) o pi1 + d o pi2) o d_S");
  auto& dc5 = r.add("DC.5", "S(<pi1,pi4>) o d o d = d");
  auto& dc6 = r.add("DC.6", "S(<pi1,pi3,pi2,pi4>) o d o d = d o d");
  auto& dcn = r.add("DC.N", "S(<pi1,-pi2>) o d = -d");

  for (const auto& e : instances(S, k, opt, 1)) {
    const auto de = d(e, k);
    auto l1 = S.map<Var, Var>(de, block_map(k, {{1}, {0}}));
    dc1.record_lazy(l1.is_zero(), [&] { return witness(P, e, V1, l1, {}, V1); });

    auto l2 = S.map<Var, Var>(de, block_map(k, {{1, 0, 0}, {0, 1, 1}}));
    auto r2 = S.map<Var, Var>(de, block_map(k, {{1, 0, 0}, {0, 1, 0}})) +
              S.map<Var, Var>(de, block_map(k, {{1, 0, 0}, {0, 0, 1}}));
    dc2.record_lazy(l2 == r2, [&] { return witness(P, e, V1, l2, r2, V3); });

    const auto dde = d(de, 2 * k);
    auto l5 = S.map<Var, Var>(dde, block_map(k, {{1, 0}, {0, 0}, {0, 0}, {0, 1}}));
    dc5.record_lazy(l5 == de, [&] { return witness(P, e, V1, l5, de, V2); });

    auto l6 = S.map<Var, Var>(dde, block_map(k, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}}));
    dc6.record_lazy(l6 == dde, [&] { return witness(P, e, V1, l6, dde, V4); });

    auto ln = S.map<Var, Var>(de, block_map(k, {{1, 0}, {0, -1}}));
    dcn.record_lazy(ln == -de, [&] { return witness(P, e, V1, ln, -de, V2); });
  }

  // DC.3 on basis vectors and random vectors of V.
  RandomFree R(opt.seed * 1000003 + 2);
  std::vector<Vector> vectors;
  for (std::size_t i = 0; i < k; ++i) vectors.emplace_back(i);
  for (std::size_t t = 0; t < opt.trials; ++t) {
    Vector v;
    for (std::size_t i = 0; i < k; ++i) v.add(i, R.coefficient());
    vectors.push_back(v);
  }
  for (const auto& v : vectors) {
    auto ev = unit_image(S, v);
    auto lhs = d(ev, k);
    Vector shifted;
    for (const auto& [i, c] : v) shifted.add(i + k, c);
    auto rhs = unit_image(S, shifted);
    dc3.record_lazy(lhs == rhs, [&] { return witness(P, ev, V1, lhs, rhs, V2); });
  }

  for (const auto& N : nested_instances(S, k, opt, 3)) {
    auto lhs = d(S.mult(N), k);
    auto dS = S.diff<FreeTerm, PairVar>(
        N, [](const FreeTerm& t) { return PairVar{0, t}; }, [](const FreeTerm& t) { return PairVar{1, t}; });
    auto mapped = S.map<PairVar, FreeTerm>(dS, [&](const PairVar& pv) {
      if (pv.first == 0) return FreeElement(pv.second);
      return d(FreeElement(pv.second), k);
    });
    auto rhs = S.mult(mapped);
    dc4.record_lazy(lhs == rhs, [&] {
      return "input " + render_nested(P, N, V1) + "; lhs " + render_free(P, lhs, V2) + "; rhs " +
             render_free(P, rhs, V2);
    });
  }
  return r;
}

Report check_lambda_axioms(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  const auto V1 = module_for(k, 1), V2 = module_for(k, 2), V3 = module_for(k, 3), V4 = module_for(k, 4);
  auto lam = [&](const FreeElement& e, std::size_t kk) { return S.lambda(e, kk); };
  auto pair_witness = [&](const FreeElement& in, const BasedModule& Vin, const std::pair<FreeElement, FreeElement>& l,
                          const std::pair<FreeElement, FreeElement>& rr) {
    return "input " + render_free(P, in, Vin) + "; lhs (" + render_free(P, l.first, V1) + ", " +
           render_free(P, l.second, V1) + "); rhs (" + render_free(P, rr.first, V1) + ", " +
           render_free(P, rr.second, V1) + ")";
  };
  Report r;
  r.subject = "distributive law axioms for " + P.name();
  auto& mu = r.add("lambda-mult", "lambda o gamma = (gamma x gamma) o lambda_S o S(lambda)");
  auto& eta = r.add("lambda-unit", "lambda o eta = eta x eta");
  auto& p = r.add("lambda-p", "p o lambda = S(p)");
  auto& z = r.add("lambda-z", "lambda o S(z) = z_S");
  auto& s = r.add("lambda-s", "lambda o S(s) = s_S o <S(pi1), pi2 o lambda o S(q1), pi2 o lambda o S(q2)>");
  auto& l = r.add("lambda-l", "l_S o lambda = (lambda x lambda) o lambda o S(l)");
  auto& c = r.add("lambda-c", "c_S o (lambda x lambda) o lambda = (lambda x lambda) o lambda o S(c)");
  auto& n = r.add("lambda-n", "n_S o lambda = lambda o S(n)");

  for (const auto& e : instances(S, 2 * k, opt, 11)) {
    auto le = lam(e, k);
    auto sp = S.map<Var, Var>(e, block_map(k, {{1}, {0}}));
    p.record_lazy(le.first == sp, [&] { return witness(P, e, V2, le.first, sp, V1); });

    auto ne = lam(S.map<Var, Var>(e, block_map(k, {{1, 0}, {0, -1}})), k);
    std::pair<FreeElement, FreeElement> expect_n{le.first, -le.second};
    n.record_lazy(ne == expect_n, [&] { return pair_witness(e, V2, ne, expect_n); });

    auto [F, G] = lam(S.map<Var, Var>(e, block_map(k, {{1, 0, 0, 0}, {0, 0, 0, 1}})), 2 * k);
    auto a = lam(F, k), b = lam(G, k);
    bool ok = a.first == le.first && a.second.is_zero() && b.first.is_zero() && b.second == le.second;
    l.record_lazy(ok, [&] {
      return "input " + render_free(P, e, V2) + "; expected (X,0,0,Y) got (" + render_free(P, a.first, V1) + ", " +
             render_free(P, a.second, V1) + ", " + render_free(P, b.first, V1) + ", " + render_free(P, b.second, V1) +
             ")";
    });
  }

  for (std::size_t v = 0; v < 2 * k; ++v) {
    auto ev = S.unit(v);
    auto lhs = lam(ev, k);
    std::pair<FreeElement, FreeElement> rhs;
    (v < k ? rhs.first : rhs.second) = S.unit(v % k);
    eta.record_lazy(lhs == rhs, [&] { return pair_witness(ev, V2, lhs, rhs); });
  }

  for (const auto& e : instances(S, k, opt, 12)) {
    auto lhs = lam(S.map<Var, Var>(e, block_map(k, {{1, 0}})), k);
    std::pair<FreeElement, FreeElement> rhs{e, {}};
    z.record_lazy(lhs == rhs, [&] { return pair_witness(e, V1, lhs, rhs); });
  }

  for (const auto& e : instances(S, 3 * k, opt, 13)) {
    auto lhs = lam(S.map<Var, Var>(e, block_map(k, {{1, 0}, {0, 1}, {0, 1}})), k);
    std::pair<FreeElement, FreeElement> rhs;
    rhs.first = S.map<Var, Var>(e, block_map(k, {{1}, {0}, {0}}));
    rhs.second = lam(S.map<Var, Var>(e, block_map(k, {{1, 0}, {0, 1}, {0, 0}})), k).second +
                 lam(S.map<Var, Var>(e, block_map(k, {{1, 0}, {0, 0}, {0, 1}})), k).second;
    s.record_lazy(lhs == rhs, [&] { return pair_witness(e, V3, lhs, rhs); });
  }

  auto four = [&](const FreeElement& e) {
    auto [F, G] = lam(e, 2 * k);
    auto a = lam(F, k), b = lam(G, k);
    return std::vector<FreeElement>{a.first, a.second, b.first, b.second};
  };
  for (const auto& e : instances(S, 4 * k, opt, 14)) {
    auto lhs = four(e);
    std::swap(lhs[1], lhs[2]);
    auto rhs = four(S.map<Var, Var>(e, block_map(k, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}})));
    c.record_lazy(lhs == rhs, [&] {
      std::string out = "input " + render_free(P, e, V4) + "; lhs/rhs components:";
      for (std::size_t i = 0; i < 4; ++i)
        out += " (" + render_free(P, lhs[i], V1) + " | " + render_free(P, rhs[i], V1) + ")";
      return out;
    });
  }

  for (const auto& N : nested_instances(S, 2 * k, opt, 15)) {
    auto lhs = lam(S.mult(N), k);
    auto lifted = S.map<FreeTerm, PairVar>(N, [&](const FreeTerm& t) {
      auto [a, b] = lam(FreeElement(t), k);
      LinComb<PairVar> out;
      for (const auto& [u, cu] : a) out.add(PairVar{0, u}, cu);
      for (const auto& [u, cu] : b) out.add(PairVar{1, u}, cu);
      return out;
    });
    auto split = S.lambda<PairVar, FreeTerm>(
        lifted, [](const PairVar& pv) { return pv.first == 0 ? FreeElement(pv.second) : FreeElement(); },
        [](const PairVar& pv) { return pv.first == 1 ? FreeElement(pv.second) : FreeElement(); });
    std::pair<FreeElement, FreeElement> rhs{S.mult(split.first), S.mult(split.second)};
    mu.record_lazy(lhs == rhs, [&] {
      return "input " + render_nested(P, N, V2) + "; lhs (" + render_free(P, lhs.first, V1) + ", " +
             render_free(P, lhs.second, V1) + "); rhs (" + render_free(P, rhs.first, V1) + ", " +
             render_free(P, rhs.second, V1) + ")";
    });
  }
  return r;
}

Report check_monad_laws(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  const auto V1 = module_for(k, 1);
  Report r;
  r.subject = "monad laws for " + P.name();
  auto& left = r.add("unit-left", "gamma o S(eta) = 1");
  auto& right = r.add("unit-right", "gamma o eta_S = 1");
  auto& assoc = r.add("associativity", "gamma o S(gamma) = gamma o gamma_S");

  for (const auto& e : instances(S, k, opt, 21)) {
    auto a = S.mult(S.map<Var, FreeTerm>(e, [&](const Var& v) { return S.unit(v); }));
    left.record_lazy(a == e, [&] { return witness(P, e, V1, a, e, V1); });
    Free<FreeTerm> lifted;
    for (const auto& [t, c] : e) lifted.add(S.unit(t), c);
    auto b = S.mult(lifted);
    right.record_lazy(b == e, [&] { return witness(P, e, V1, b, e, V1); });
  }

  std::vector<Free<Term<FreeTerm>>> triples;
  {
    std::vector<FreeTerm> small = S.basis_terms_up_to(2, k);
    std::function<std::size_t(const FreeTerm&)> w1 = [](const FreeTerm& t) { return t.arity; };
    auto middle = outer_terms_over<FreeTerm>(S, small, 2, w1, 2);
    std::function<std::size_t(const Term<FreeTerm>&)> w2 = [](const Term<FreeTerm>& t) {
      std::size_t s = 0;
      for (const auto& u : t.word) s += u.arity;
      return s;
    };
    for (auto& t : outer_terms_over<Term<FreeTerm>>(S, middle, 2, w2, opt.arity_bound)) triples.emplace_back(t);
    RandomFree R(opt.seed * 1000003 + 22);
    for (std::size_t t = 0; t < opt.trials; ++t) triples.push_back(R.nested3(S, k, opt.arity_bound));
  }
  for (const auto& E : triples) {
    auto lhs = S.mult(S.map<Term<FreeTerm>, FreeTerm>(E, [&](const Term<FreeTerm>& t) { return S.mult(Free<FreeTerm>(t)); }));
    auto rhs = S.mult(S.mult(E));
    assoc.record_lazy(lhs == rhs, [&] { return "lhs " + render_free(P, lhs, V1) + "; rhs " + render_free(P, rhs, V1); });
  }
  return r;
}

Report check_naturality(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  Report r;
  r.subject = "naturality for " + P.name();
  auto& eta = r.add("eta", "S(f) o eta = eta o f");
  auto& gamma = r.add("gamma", "S(f) o gamma = gamma o S(S(f))");
  auto& d = r.add("d", "d o S(f) = S(f x f) o d");
  auto& lam = r.add("lambda", "lambda o S(f x f) = (S(f) x S(f)) o lambda");
  RandomFree R(opt.seed * 1000003 + 31);
  const std::size_t per_map = 5;
  for (std::size_t m = 0; m < opt.maps; ++m) {
    const std::size_t k2 = 1 + R.below(3);
    const auto f = R.linear_map(k, k2);
    const auto ff = f.power(2);
    const auto V = module_for(k, 1), W = module_for(k2, 1);
    for (std::size_t v = 0; v < k; ++v) {
      auto lhs = S.map_linear(S.unit(v), f);
      auto rhs = unit_image(S, f.column(v));
      eta.record_lazy(lhs == rhs, [&] { return witness(P, S.unit(v), V, lhs, rhs, W); });
    }
    for (std::size_t t = 0; t < per_map; ++t) {
      auto N = R.nested(S, k, opt.arity_bound);
      auto lhs = S.map_linear(S.mult(N), f);
      auto rhs = S.mult(S.map<FreeTerm, FreeTerm>(N, [&](const FreeTerm& u) { return S.map_linear(FreeElement(u), f); }));
      gamma.record_lazy(lhs == rhs, [&] { return "input " + render_nested(P, N, V) + "; lhs " + render_free(P, lhs, W) + "; rhs " + render_free(P, rhs, W); });

      auto e = R.element(S, k, opt.arity_bound);
      auto dl = S.diff(S.map_linear(e, f), k2);
      auto dr = S.map_linear(S.diff(e, k), ff);
      d.record_lazy(dl == dr, [&] { return witness(P, e, V, dl, dr, module_for(k2, 2)); });

      auto e2 = R.element(S, 2 * k, opt.arity_bound);
      auto ll = S.lambda(S.map_linear(e2, ff), k2);
      auto lr0 = S.lambda(e2, k);
      std::pair<FreeElement, FreeElement> lr{S.map_linear(lr0.first, f), S.map_linear(lr0.second, f)};
      lam.record_lazy(ll == lr, [&] {
        return "input " + render_free(P, e2, module_for(k, 2)) + "; lhs (" + render_free(P, ll.first, W) + ", " +
               render_free(P, ll.second, W) + "); rhs (" + render_free(P, lr.first, W) + ", " +
               render_free(P, lr.second, W) + ")";
      });
    }
  }
  return r;
}

Report check_counit_laws(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  const auto V1 = module_for(k, 1);
  Report r;
  r.subject = "D-linear counit for " + P.name();
  if (!counit_exists(P)) {
    r.add("counit-exists", "P(1) spanned by the unit")
        .record(false, "dim P(1) = " + std::to_string(P.dim(1)));
    return r;
  }
  auto& du1 = r.add("DU.1", "E o eta = 1");
  auto& du2 = r.add("DU.2", "eta o E = S(pi2) o d");
  for (std::size_t v = 0; v < k; ++v) {
    auto got = dlinear_counit(S, S.unit(v));
    du1.record_lazy(got == Vector(v), [&] { return "E(eta(" + V1.name(v) + ")) = " + render_vector(got, V1); });
  }
  for (const auto& e : instances(S, k, opt, 41)) {
    auto lhs = unit_image(S, dlinear_counit(S, e));
    auto rhs = S.map<Var, Var>(S.diff(e, k), block_map(k, {{0}, {1}}));
    du2.record_lazy(lhs == rhs, [&] { return witness(P, e, V1, lhs, rhs, V1); });
  }
  return r;
}

Report check_lambda_round_trip(const FreeMonad& S, const AxiomOptions& opt) {
  const auto& P = S.operad();
  const std::size_t k = opt.dim_v;
  Report r;
  r.subject = "d from lambda for " + P.name();
  auto& rt = r.add("round-trip", "pi2 o lambda o S(<1,0,0,1>) = d");
  for (const auto& e : instances(S, k, opt, 51)) {
    auto a = partial_from_lambda(S, e, k);
    auto b = S.diff(e, k);
    rt.record_lazy(a == b, [&] { return witness(P, e, module_for(k, 1), a, b, module_for(k, 2)); });
  }
  return r;
}

DiffFn diff_skipping_first_slot(const FreeMonad& S) {
  return [&S](const FreeElement& e, std::size_t k) {
    FreeElement out;
    for (const auto& [t, c] : e) {
      const auto mu = OperadElement::basis(t.arity, t.op);
      for (std::size_t i = 1; i < t.word.size(); ++i) {
        auto w = t.word;
        w[i] += k;
        out.add(S.canonicalize(mu, w), c);
      }
    }
    return out;
  };
}

}  // namespace operadiff
