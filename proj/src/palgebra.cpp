#include "operadiff/palgebra.hpp"

#include "operadiff/dc_axioms.hpp"

#include <sstream>

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

std::vector<Vector> unit_vectors(const std::vector<std::size_t>& idx) {
  std::vector<Vector> out;
  out.reserve(idx.size());
  for (auto i : idx) out.emplace_back(i);
  return out;
}

std::string tuple_string(const BasedModule& M, const std::vector<std::size_t>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? ", " : "") + M.name(idx[i]);
  return s + ")";
}

std::size_t generator_index(const Operad& P, const std::string& name) {
  auto gens = P.generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (gens[g].name == name) return g;
  throw InputError("operad " + P.name() + " has no generator " + name);
}

// Prefix for the tangent copy that does not clash with existing names.
std::string fresh_prefix(const BasedModule& M, const std::string& stem) {
  std::string p = stem;
  while (true) {
    bool clash = false;
    for (const auto& n : M.names())
      if (M.find(p + n)) clash = true;
    if (!clash) return p;
    p += "'";
  }
}

LinearMap block_matrix(std::size_t k, const std::vector<std::vector<int>>& m) {
  std::vector<std::vector<Scalar>> s;
  for (const auto& row : m) {
    s.emplace_back();
    for (int x : row) s.back().emplace_back(static_cast<long>(x));
  }
  return LinearMap::blocks(k, s);
}

}  // namespace

PAlgebra::PAlgebra(OperadPtr P, BasedModule carrier, std::vector<GeneratorTable> tables)
    : P_(std::move(P)), carrier_(std::move(carrier)), tables_(std::move(tables)) {
  auto gens = P_->generators();
  if (tables_.size() != gens.size())
    throw InputError("expected " + std::to_string(gens.size()) + " generator tables for " + P_->name());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (const auto& [idx, v] : tables_[g]) {
      if (idx.size() != gens[g].arity) throw InputError("table entry of wrong arity for " + gens[g].name);
      for (auto i : idx)
        if (i >= dim()) throw InputError("table entry outside the carrier for " + gens[g].name);
      for (const auto& [o, c] : v)
        if (o >= dim()) throw InputError("table value outside the carrier for " + gens[g].name);
    }
}

Vector PAlgebra::apply_generator(std::size_t g, const std::vector<Vector>& args) const {
  Vector out;
  const auto& table = tables_.at(g);
  std::vector<std::size_t> idx(args.size());
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
    if (i == args.size()) {
      auto it = table.find(idx);
      if (it != table.end()) out.add(it->second, c);
      return;
    }
    for (const auto& [j, cj] : args[i]) {
      idx[i] = j;
      rec(i + 1, c * cj);
    }
  };
  rec(0, Scalar(1));
  return out;
}

Vector PAlgebra::eval_tree(const OpTree& t, const std::vector<Vector>& args) const {
  if (t.is_leaf()) return args.at(static_cast<std::size_t>(t.leaf));
  std::vector<Vector> vals;
  vals.reserve(t.children.size());
  for (const auto& ch : t.children) {
    vals.push_back(eval_tree(ch, args));
    if (vals.back().is_zero()) return {};
  }
  return apply_generator(t.gen, vals);
}

Vector PAlgebra::evaluate_basis(std::size_t n, std::size_t i, const std::vector<std::size_t>& args) const {
  std::vector<std::size_t> key{n, i};
  key.insert(key.end(), args.begin(), args.end());
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Vector v = eval_tree(P_->decompose(n, i), unit_vectors(args));
  std::lock_guard<std::mutex> g(mu_);
  cache_.emplace(std::move(key), v);
  return v;
}

Vector PAlgebra::evaluate(const OperadElement& mu, const std::vector<Vector>& args) const {
  if (args.size() != mu.arity) throw InputError("operation applied to wrong number of arguments");
  Vector out;
  std::vector<std::size_t> idx(args.size());
  std::function<void(std::size_t, const Scalar&)> rec = [&](std::size_t i, const Scalar& c) {
    if (i == args.size()) {
      for (const auto& [b, cb] : mu.coeffs) out.add(evaluate_basis(mu.arity, b, idx), c * cb);
      return;
    }
    for (const auto& [j, cj] : args[i]) {
      idx[i] = j;
      rec(i + 1, c * cj);
    }
  };
  rec(0, Scalar(1));
  return out;
}

Vector PAlgebra::theta(const FreeElement& e) const {
  Vector out;
  for (const auto& [t, c] : e) out.add(evaluate_basis(t.arity, t.op, t.word), c);
  return out;
}

PAlgebra make_unital_algebra(OperadPtr P, BasedModule basis, const std::vector<std::vector<Vector>>& mult,
                             const Vector& unit) {
  std::vector<GeneratorTable> tables(P->generators().size());
  tables[generator_index(*P, "unit")][{}] = unit;
  auto& m = tables[generator_index(*P, "mul")];
  for (std::size_t i = 0; i < mult.size(); ++i)
    for (std::size_t j = 0; j < mult[i].size(); ++j)
      if (!mult[i][j].is_zero()) m[{i, j}] = mult[i][j];
  return PAlgebra(std::move(P), std::move(basis), std::move(tables));
}

PAlgebra make_lie_algebra(OperadPtr lie, BasedModule basis, const std::vector<std::vector<Vector>>& bracket) {
  std::vector<GeneratorTable> tables(lie->generators().size());
  auto& b = tables[generator_index(*lie, "bracket")];
  for (std::size_t i = 0; i < bracket.size(); ++i)
    for (std::size_t j = 0; j < bracket[i].size(); ++j)
      if (!bracket[i][j].is_zero()) b[{i, j}] = bracket[i][j];
  return PAlgebra(std::move(lie), std::move(basis), std::move(tables));
}

PAlgebra truncated_polynomial_algebra(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "1" : i == 1 ? "x" : "x^" + std::to_string(i));
  std::vector<std::vector<Vector>> mult(n, std::vector<Vector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i + j < n) mult[i][j] = Vector(i + j);
  return make_unital_algebra(make_com_operad(), BasedModule(names), mult, Vector(0));
}

PAlgebra upper_triangular_algebra() {
  // e11, e12, e22
  std::vector<std::vector<Vector>> mult(3, std::vector<Vector>(3));
  mult[0][0] = Vector(0);
  mult[0][1] = Vector(1);
  mult[1][2] = Vector(1);
  mult[2][2] = Vector(2);
  return make_unital_algebra(make_ass_operad(), BasedModule({"e11", "e12", "e22"}), mult, Vector(0) + Vector(2));
}

PAlgebra lie_he_algebra() {
  std::vector<std::vector<Vector>> br(2, std::vector<Vector>(2));
  br[0][1] = Scalar(2) * Vector(1);
  br[1][0] = Scalar(-2) * Vector(1);
  return make_lie_algebra(make_lie_operad(), BasedModule({"h", "e"}), br);
}

PAlgebra abelian_lie_algebra(std::size_t dim) {
  return make_lie_algebra(make_lie_operad(), BasedModule::coordinates(dim, "a"), {});
}

PAlgebra zero_algebra(OperadPtr P) {
  std::vector<GeneratorTable> tables(P->generators().size());
  return PAlgebra(std::move(P), BasedModule(), std::move(tables));
}

Report check_algebra_axioms(const PAlgebra& A, std::size_t bound) {
  const auto& P = A.operad();
  const auto& M = A.carrier();
  const std::size_t k = A.dim();
  Report r;
  r.subject = "algebra axioms for a " + P.name() + "-algebra of dimension " + std::to_string(k);
  auto& unit = r.add("unit", "1_P(a) = a");
  auto& comp = r.add("composition", "mu(.., nu(..), ..) = (mu o_i nu)(..)");
  auto& equiv = r.add("equivariance", "(mu . s)(a) = mu(s a)");

  for (std::size_t a = 0; a < k; ++a) {
    auto v = A.evaluate(P.unit(), {Vector(a)});
    unit.record_lazy(v == Vector(a), [&] { return "1_P(" + M.name(a) + ") = " + render_vector(v, M); });
  }
  auto limit = [&](std::size_t n) { return !P.max_arity() || n <= *P.max_arity(); };
  for (std::size_t m = 1; m <= bound && limit(m); ++m)
    for (std::size_t n = 0; m + n - 1 <= bound && limit(n) && limit(m + n - 1); ++n)
      for (std::size_t a = 0; a < P.dim(m); ++a)
        for (std::size_t b = 0; b < P.dim(n); ++b)
          for (std::size_t i = 0; i < m; ++i) {
            auto composite = P.compose_basis(m, a, i, n, b);
            for_tuples(k, m + n - 1, [&](const std::vector<std::size_t>& w) {
              std::vector<std::size_t> inner(w.begin() + static_cast<std::ptrdiff_t>(i),
                                             w.begin() + static_cast<std::ptrdiff_t>(i + n));
              std::vector<Vector> outer;
              for (std::size_t j = 0; j < i; ++j) outer.emplace_back(w[j]);
              outer.push_back(A.evaluate_basis(n, b, inner));
              for (std::size_t j = i + n; j < w.size(); ++j) outer.emplace_back(w[j]);
              auto lhs = A.evaluate(OperadElement::basis(m, a), outer);
              auto rhs = A.evaluate(composite, unit_vectors(w));
              comp.record_lazy(lhs == rhs, [&] {
                return P.symbol(m, a) + " o_" + std::to_string(i + 1) + " " + P.symbol(n, b) + " on " +
                       tuple_string(M, w) + ": " + render_vector(lhs, M) + " vs " + render_vector(rhs, M);
              });
            });
          }
  for (std::size_t n = 2; n <= bound && limit(n); ++n)
    for (std::size_t a = 0; a < P.dim(n); ++a)
      for (std::size_t t = 0; t + 1 < n; ++t) {
        auto s = Permutation::transposition(n, t, t + 1);
        auto acted = P.act_basis(n, a, s);
        for_tuples(k, n, [&](const std::vector<std::size_t>& w) {
          auto lhs = A.evaluate(acted, unit_vectors(w));
          auto rhs = A.evaluate_basis(n, a, act_word(s, w));
          equiv.record_lazy(lhs == rhs, [&] {
            return P.symbol(n, a) + " . " + s.to_string() + " on " + tuple_string(M, w) + ": " +
                   render_vector(lhs, M) + " vs " + render_vector(rhs, M);
          });
        });
      }
  return r;
}

std::size_t generator_arity(const Operad& P) {
  std::size_t m = 0;
  for (const auto& g : P.generators()) m = std::max(m, g.arity);
  return m;
}

Report check_morphism(const PAlgebra& A, const PAlgebra& B, const LinearMap& f, std::size_t bound) {
  const auto& P = A.operad();
  Report r;
  r.subject = "morphism check";
  auto& shape = r.add("shape", "f: A -> B between carriers");
  if (!shape.record(f.domain_dim() == A.dim() && f.codomain_dim() == B.dim(),
                    std::to_string(f.domain_dim()) + " -> " + std::to_string(f.codomain_dim())))
    return r;
  auto& ops = r.add("operations", "f(mu(a..)) = mu(f a..)");
  for (std::size_t n = 0; n <= bound && (!P.max_arity() || n <= *P.max_arity()); ++n)
    for (std::size_t i = 0; i < P.dim(n); ++i)
      for_tuples(A.dim(), n, [&](const std::vector<std::size_t>& w) {
        auto lhs = f.apply(A.evaluate_basis(n, i, w));
        std::vector<Vector> images;
        for (auto a : w) images.push_back(f.column(a));
        auto rhs = B.evaluate(OperadElement::basis(n, i), images);
        ops.record_lazy(lhs == rhs, [&] {
          return P.symbol(n, i) + " on " + tuple_string(A.carrier(), w) + ": " + render_vector(lhs, B.carrier()) +
                 " vs " + render_vector(rhs, B.carrier());
        });
      });
  return r;
}

PAlgebra tangent_power(const PAlgebra& A, std::size_t n) {
  const std::size_t k = A.dim();
  std::vector<std::string> prefixes{""};
  if (n == 1) {
    prefixes.push_back(fresh_prefix(A.carrier(), "d"));
  } else {
    for (std::size_t j = 1; j <= n; ++j) prefixes.push_back(fresh_prefix(A.carrier(), "d" + std::to_string(j) + "."));
  }
  auto carrier = BasedModule::power(A.carrier(), prefixes);
  std::vector<GeneratorTable> tables(A.tables().size());
  for (std::size_t g = 0; g < tables.size(); ++g)
    for (const auto& [idx, v] : A.tables()[g]) {
      tables[g][idx] = v;
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t b = 1; b <= n; ++b) {
          auto w = idx;
          w[i] += b * k;
          Vector shifted;
          for (const auto& [o, c] : v) shifted.add(o + b * k, c);
          tables[g][w] = shifted;
        }
    }
  return PAlgebra(A.operad_ptr(), carrier, std::move(tables));
}

PAlgebra tangent_bundle(const PAlgebra& A) { return tangent_power(A, 1); }

PAlgebra tangent_bundle_from_monad(const PAlgebra& A) {
  const auto& P = A.operad();
  const std::size_t k = A.dim();
  FreeMonad S(A.operad_ptr());
  auto gens = P.generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for_tuples(2 * k, gens[g].arity, [&](const std::vector<std::size_t>& w) {
      auto e = S.canonicalize(OperadElement::basis(gens[g].arity, gens[g].basis_index), w);
      auto [first, second] = S.lambda(e, k);
      Vector v = A.theta(first);
      for (const auto& [o, c] : A.theta(second)) v.add(o + k, c);
      if (!v.is_zero()) tables[g][w] = v;
    });
  return PAlgebra(A.operad_ptr(), BasedModule::power(A.carrier(), {"", fresh_prefix(A.carrier(), "d")}),
                  std::move(tables));
}

Report compare_algebras(const PAlgebra& A, const PAlgebra& B, std::size_t bound) {
  const auto& P = A.operad();
  Report r;
  r.subject = "structure comparison";
  auto& same = r.add("same-operations", "mu_A = mu_B on basis tuples");
  if (!same.record(A.dim() == B.dim(), "carrier dimensions differ")) return r;
  for (std::size_t n = 0; n <= bound && (!P.max_arity() || n <= *P.max_arity()); ++n)
    for (std::size_t i = 0; i < P.dim(n); ++i)
      for_tuples(A.dim(), n, [&](const std::vector<std::size_t>& w) {
        auto a = A.evaluate_basis(n, i, w), b = B.evaluate_basis(n, i, w);
        same.record_lazy(a == b, [&] {
          return P.symbol(n, i) + " on " + tuple_string(A.carrier(), w) + ": " + render_vector(a, A.carrier()) +
                 " vs " + render_vector(b, B.carrier());
        });
      });
  return r;
}

TangentMaps tangent_maps(std::size_t k) {
  TangentMaps m;
  m.p = block_matrix(k, {{1, 0}});
  m.z = block_matrix(k, {{1}, {0}});
  m.s = block_matrix(k, {{1, 0, 0}, {0, 1, 1}});
  m.q1 = block_matrix(k, {{1, 0, 0}, {0, 1, 0}});
  m.q2 = block_matrix(k, {{1, 0, 0}, {0, 0, 1}});
  m.l = block_matrix(k, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});
  m.c = block_matrix(k, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  m.n = block_matrix(k, {{1, 0}, {0, -1}});
  return m;
}

Report check_tangent_equations(const PAlgebra& A, const TangentMaps& m, const TangentSuiteOptions& opt) {
  const std::size_t k = A.dim();
  const auto T = tangent_bundle(A);
  const auto T2 = tangent_power(A, 2);
  const auto TT = tangent_bundle(T);
  const auto I = [](std::size_t n) { return LinearMap::identity(n); };
  const auto B = [&](const std::vector<std::vector<int>>& mat) { return block_matrix(k, mat); };
  // <f, g> into the pullback A x A x A for f, g: X -> T(A) over the same point
  const auto pair = [&](const LinearMap& f, const LinearMap& g) {
    return B({{1}, {0}, {0}}).compose(B({{1, 0}}).compose(f)) + B({{0}, {1}, {0}}).compose(B({{0, 1}}).compose(f)) +
           B({{0}, {0}, {1}}).compose(B({{0, 1}}).compose(g));
  };
  const auto pT = block_matrix(2 * k, {{1, 0}});
  const auto cT = block_matrix(2 * k, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  const auto lT = block_matrix(2 * k, {{1, 0}, {0, 0}, {0, 0}, {0, 1}});

  Report r;
  r.subject = "tangent structure on a " + A.operad().name() + "-algebra of dimension " + std::to_string(k);
  auto eq = [&](const std::string& name, const std::string& statement, const LinearMap& lhs, const LinearMap& rhs) {
    auto& c = r.add(name, statement);
    c.record_lazy(lhs == rhs, [&] {
      for (std::size_t j = 0; j < lhs.domain_dim(); ++j)
        if (!(lhs.column(j) == rhs.column(j)))
          return "basis vector " + std::to_string(j) + ": " + render_vector(lhs.column(j), BasedModule::coordinates(lhs.codomain_dim(), "e")) +
                 " vs " + render_vector(rhs.column(j), BasedModule::coordinates(rhs.codomain_dim(), "e"));
      return std::string("shapes differ");
    });
  };

  eq("p.z", "p o z = 1", m.p.compose(m.z), I(k));
  eq("p.s", "p o s = p o q1", m.p.compose(m.s), m.p.compose(m.q1));
  eq("p.q", "p o q1 = p o q2", m.p.compose(m.q1), m.p.compose(m.q2));
  eq("s-commutative", "s o <q2, q1> = s", m.s.compose(pair(m.q2, m.q1)), m.s);
  eq("s-unit", "s o <1, z o p> = 1", m.s.compose(pair(I(2 * k), m.z.compose(m.p))), I(2 * k));
  {
    // on A x A^3 = (a, b1, b2, b3)
    auto r12 = B({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}), r3 = B({{1, 0, 0, 0}, {0, 0, 0, 1}});
    auto r1 = B({{1, 0, 0, 0}, {0, 1, 0, 0}}), r23 = B({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    eq("s-associative", "s o <s o q12, q3> = s o <q1, s o q23>", m.s.compose(pair(m.s.compose(r12), r3)),
       m.s.compose(pair(r1, m.s.compose(r23))));
  }
  eq("s-inverse", "s o <1, n> = z o p", m.s.compose(pair(I(2 * k), m.n)), m.z.compose(m.p));
  eq("pT.l", "p_T o l = z o p", pT.compose(m.l), m.z.compose(m.p));
  eq("Tp.l", "T(p) o l = z o p", m.p.power(2).compose(m.l), m.z.compose(m.p));
  eq("c.c", "c o c = 1", m.c.compose(m.c), I(4 * k));
  eq("c.l", "c o l = l", m.c.compose(m.l), m.l);
  eq("c-hexagon", "T(c) o c_T o T(c) = c_T o T(c) o c_T", m.c.power(2).compose(cT).compose(m.c.power(2)),
     cT.compose(m.c.power(2)).compose(cT));
  eq("l-coassociative", "T(l) o l = l_T o l", m.l.power(2).compose(m.l), lT.compose(m.l));
  eq("Tp.c", "T(p) o c = p_T", m.p.power(2).compose(m.c), pT);

  const std::size_t gb = generator_arity(A.operad());
  auto morph = [&](const std::string& name, const PAlgebra& X, const PAlgebra& Y, const LinearMap& f) {
    auto rep = check_morphism(X, Y, f, gb);
    auto& c = r.add(name, "is an algebra morphism");
    for (const auto& ch : rep.checks) {
      c.instances += ch.instances;
      if (!ch.passed && c.passed) {
        c.passed = false;
        c.counterexample = ch.counterexample;
      }
    }
  };
  morph("morphism-p", T, A, m.p);
  morph("morphism-z", A, T, m.z);
  morph("morphism-s", T2, T, m.s);
  morph("morphism-q1", T2, T, m.q1);
  morph("morphism-q2", T2, T, m.q2);
  morph("morphism-l", T, TT, m.l);
  morph("morphism-c", TT, TT, m.c);
  morph("morphism-n", T, T, m.n);

  r.append(check_algebra_axioms(T, opt.arity_bound), "T(A) ");
  r.append(check_algebra_axioms(T2, opt.arity_bound), "A x A^2 ");
  r.append(check_algebra_axioms(TT, std::min<std::size_t>(opt.arity_bound, 3)), "T2(A) ");
  r.append(compare_algebras(T, tangent_bundle_from_monad(A), opt.arity_bound), "T(A) vs (theta x theta) o lambda ");

  auto& nat = r.add("naturality", "structure maps commute with T(f) for algebra endomorphisms f");
  for (const auto& f : opt.endomorphisms) {
    morph("endomorphism", A, A, f);
    morph("T(f)", T, T, f.power(2));
    const auto Tf = f.power(2), T2f = f.power(3), TTf = f.power(4);
    std::vector<std::pair<std::string, bool>> laws{
        {"p", m.p.compose(Tf) == f.compose(m.p)},
        {"z", Tf.compose(m.z) == m.z.compose(f)},
        {"s", m.s.compose(T2f) == Tf.compose(m.s)},
        {"q1", m.q1.compose(T2f) == Tf.compose(m.q1)},
        {"q2", m.q2.compose(T2f) == Tf.compose(m.q2)},
        {"l", TTf.compose(m.l) == m.l.compose(Tf)},
        {"c", TTf.compose(m.c) == m.c.compose(TTf)},
        {"n", Tf.compose(m.n) == m.n.compose(Tf)}};
    for (const auto& [name, ok] : laws) nat.record(ok, "naturality of " + name);
  }
  return r;
}

bool is_derivation(const PAlgebra& A, const LinearMap& D, std::string* witness) {
  const auto& P = A.operad();
  const auto& M = A.carrier();
  if (D.domain_dim() != A.dim() || D.codomain_dim() != A.dim()) {
    if (witness) *witness = "not an endomorphism of the carrier";
    return false;
  }
  auto check = [&](const std::string& label, std::size_t n, const std::function<Vector(const std::vector<Vector>&)>& op) {
    bool ok = true;
    for_tuples(A.dim(), n, [&](const std::vector<std::size_t>& w) {
      if (!ok) return;
      auto args = unit_vectors(w);
      Vector lhs = D.apply(op(args));
      Vector rhs;
      for (std::size_t i = 0; i < n; ++i) {
        auto a = args;
        a[i] = D.column(w[i]);
        rhs += op(a);
      }
      if (!(lhs == rhs)) {
        ok = false;
        if (witness)
          *witness = "D(" + label + tuple_string(M, w) + ") = " + render_vector(lhs, M) + " but Leibniz gives " +
                     render_vector(rhs, M);
      }
    });
    return ok;
  };
  auto gens = P.generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    if (!check(gens[g].name, gens[g].arity, [&](const std::vector<Vector>& a) { return A.apply_generator(g, a); }))
      return false;
  // spot check of derived operations in arity 3
  if (!P.max_arity() || *P.max_arity() >= 3)
    for (std::size_t i = 0; i < P.dim(3); ++i)
      if (!check(P.symbol(3, i), 3, [&](const std::vector<Vector>& a) { return A.evaluate(OperadElement::basis(3, i), a); }))
        return false;
  return true;
}

std::vector<LinearMap> derivation_space(const PAlgebra& A) {
  const std::size_t k = A.dim();
  // unknown D_{l,j} (coefficient of e_l in D(e_j)) has index j * k + l
  std::vector<Vector> equations;
  auto gens = A.operad().generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    for_tuples(k, gens[g].arity, [&](const std::vector<std::size_t>& w) {
      auto args = unit_vectors(w);
      std::vector<Vector> rows(k);
      for (const auto& [j, c] : A.apply_generator(g, args))
        for (std::size_t o = 0; o < k; ++o) rows[o].add(j * k + o, c);
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t l = 0; l < k; ++l) {
          auto a = args;
          a[i] = Vector(l);
          for (const auto& [o, c] : A.apply_generator(g, a)) rows[o].add(w[i] * k + l, -c);
        }
      for (auto& row : rows)
        if (!row.is_zero()) equations.push_back(std::move(row));
    });
  // columns of the system matrix are indexed by unknowns
  std::vector<Vector> cols(k * k);
  for (std::size_t e = 0; e < equations.size(); ++e)
    for (const auto& [u, c] : equations[e]) cols[u].add(e, c);
  std::vector<LinearMap> out;
  for (const auto& v : solve_kernel(LinearMap(k * k, equations.size(), cols))) {
    LinearMap D(k, k);
    std::vector<Vector> dc(k);
    for (const auto& [u, c] : v) dc[u / k].add(u % k, c);
    for (std::size_t j = 0; j < k; ++j) D.set_column(j, dc[j]);
    out.push_back(D);
  }
  return out;
}

LinearMap derivation_bracket(const LinearMap& D1, const LinearMap& D2) {
  return D1.compose(D2) - D2.compose(D1);
}

LinearMap vector_field_from_derivation(const PAlgebra& A, const LinearMap& D) {
  std::string why;
  if (!is_derivation(A, D, &why)) throw DomainError("not a derivation: " + why);
  const std::size_t k = A.dim();
  LinearMap v(k, 2 * k);
  for (std::size_t j = 0; j < k; ++j) {
    Vector c(j);
    for (const auto& [o, x] : D.column(j)) c.add(o + k, x);
    v.set_column(j, c);
  }
  return v;
}

LinearMap derivation_from_vector_field(const PAlgebra& A, const LinearMap& v) {
  const std::size_t k = A.dim();
  if (v.domain_dim() != k || v.codomain_dim() != 2 * k) throw DomainError("vector field must map A to T(A)");
  const auto m = tangent_maps(k);
  if (!(m.p.compose(v) == LinearMap::identity(k))) throw DomainError("not a section of the projection p");
  auto rep = check_morphism(A, tangent_bundle(A), v, generator_arity(A.operad()));
  if (!rep.passed()) {
    std::string why;
    for (const auto& c : rep.checks)
      if (!c.passed) why = c.counterexample;
    throw DomainError("not an algebra morphism into T(A): " + why);
  }
  return block_matrix(k, {{0, 1}}).compose(v);
}

LinearMap vector_field_bracket(const PAlgebra& A, const LinearMap& v, const LinearMap& w) {
  auto Dv = derivation_from_vector_field(A, v), Dw = derivation_from_vector_field(A, w);
  return vector_field_from_derivation(A, derivation_bracket(Dv, Dw));
}

std::string render_derivations(const PAlgebra& A, const std::vector<LinearMap>& Ds) {
  const auto& M = A.carrier();
  std::ostringstream os;
  os << "dim Der = " << Ds.size();
  if (Ds.empty()) return os.str();
  os << "; basis: ";
  for (std::size_t d = 0; d < Ds.size(); ++d) {
    if (d) os << " | ";
    bool first = true;
    for (std::size_t j = 0; j < M.dim(); ++j) {
      if (Ds[d].column(j).is_zero()) continue;
      os << (first ? "" : ", ") << "D(" << M.name(j) << ")=" << render_vector(Ds[d].column(j), M);
      first = false;
    }
  }
  return os.str();
}

DifferentialObjectVerdict check_differential_object_alg(const PAlgebra& A, std::size_t bound) {
  const auto& P = A.operad();
  const auto& M = A.carrier();
  const std::size_t k = A.dim();
  DifferentialObjectVerdict out;
  out.by_operations = true;
  for (std::size_t n = 0; n <= bound && out.by_operations; ++n) {
    if (n == 1 || (P.max_arity() && n > *P.max_arity())) continue;
    for (std::size_t i = 0; i < P.dim(n) && out.by_operations; ++i)
      for_tuples(k, n, [&](const std::vector<std::size_t>& w) {
        if (!out.by_operations) return;
        auto v = A.evaluate_basis(n, i, w);
        if (!v.is_zero()) {
          out.by_operations = false;
          out.witness = P.symbol(n, i) + tuple_string(M, w) + " = " + render_vector(v, M);
        }
      });
  }
  FreeMonad S(A.operad_ptr());
  bool ok = true;
  std::string monad_witness;
  for (const auto& t : S.basis_terms_up_to(bound, k)) {
    FreeElement e(t);
    auto lhs = A.theta(e);
    auto rhs = A.theta(S.map<Var, Var>(S.diff(e, k), block_map(k, {{0}, {1}})));
    if (!(lhs == rhs)) {
      ok = false;
      monad_witness = "alpha(" + render_free(P, e, M) + ") = " + render_vector(lhs, M) + " but alpha S(pi2) d gives " +
                      render_vector(rhs, M);
      break;
    }
  }
  if (ok)
    for (const auto& t : S.basis_terms_up_to(bound, 2 * k)) {
      FreeElement e(t);
      auto lhs = A.theta(S.map<Var, Var>(e, block_map(k, {{1}, {1}})));
      auto rhs = A.theta(S.map<Var, Var>(e, block_map(k, {{1}, {0}}))) + A.theta(S.map<Var, Var>(e, block_map(k, {{0}, {1}})));
      if (!(lhs == rhs)) {
        ok = false;
        monad_witness = "alpha is not additive on " + render_free(P, e, BasedModule::power(M, {"", "'"}));
        break;
      }
    }
  if (ok)
    for (const auto& t : S.basis_terms(0, 0)) {
      auto v = A.theta(FreeElement(t));
      if (!v.is_zero()) {
        ok = false;
        monad_witness = "alpha(" + P.symbol(0, t.op) + ") = " + render_vector(v, M);
        break;
      }
    }
  out.by_monad = ok;
  if (out.witness.empty()) out.witness = monad_witness;
  return out;
}

}  // namespace operadiff
