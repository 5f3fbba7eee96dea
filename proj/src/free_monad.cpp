#include "operadiff/free_monad.hpp"

#include <sstream>

namespace operadiff {

FreeMonad::FreeMonad(OperadPtr P) : P_(std::move(P)) {
  if (!P_) throw InputError("free monad needs an operad");
}

const Echelon& FreeMonad::stabilizer_relations(std::size_t n, const std::vector<std::size_t>& blocks) const {
  std::vector<std::size_t> key{n};
  key.insert(key.end(), blocks.begin(), blocks.end());
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = stabilizers_.find(key);
    if (it != stabilizers_.end()) return it->second;
  }
  Echelon rel;
  std::size_t start = 0;
  for (auto len : blocks) {
    for (std::size_t k = start; k + 1 < start + len; ++k) {
      auto t = Permutation::transposition(n, k, k + 1);
      for (std::size_t b = 0; b < P_->dim(n); ++b) {
        Vector r = P_->act_basis(n, b, t).coeffs;
        r.add(b, Scalar(-1));
        rel.insert(std::move(r));
      }
    }
    start += len;
  }
  std::lock_guard<std::mutex> g(mu_);
  return stabilizers_.emplace(key, std::move(rel)).first->second;
}

Vector FreeMonad::reduced_op(std::size_t n, std::size_t a, const Permutation& s,
                             const std::vector<std::size_t>& blocks) const {
  std::vector<std::size_t> key{n, a};
  key.insert(key.end(), blocks.begin(), blocks.end());
  key.push_back(static_cast<std::size_t>(-1));
  key.insert(key.end(), s.images().begin(), s.images().end());
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = reduced_.find(key);
    if (it != reduced_.end()) return it->second;
  }
  const auto& rel = stabilizer_relations(n, blocks);
  Vector v = rel.reduce(P_->act_basis(n, a, s).coeffs);
  std::lock_guard<std::mutex> g(mu_);
  reduced_.emplace(key, v);
  return v;
}

OperadElement FreeMonad::compose_terms(std::size_t k, std::size_t a,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& inner) const {
  std::vector<OperadElement> parts;
  parts.reserve(inner.size());
  for (const auto& [n, b] : inner) parts.push_back(OperadElement::basis(n, b));
  return complete_compose(*P_, OperadElement::basis(k, a), parts);
}

FreeElement FreeMonad::map_linear(const FreeElement& e, const LinearMap& f) const {
  return map<Var, Var>(e, [&](const Var& v) { return f.column(v); });
}

FreeElement FreeMonad::diff(const FreeElement& e, std::size_t k) const {
  return diff<Var, Var>(
      e, [](Var v) { return v; }, [k](Var v) { return v + k; });
}

std::pair<FreeElement, FreeElement> FreeMonad::lambda(const FreeElement& e, std::size_t k) const {
  return lambda<Var, Var>(
      e, [k](Var v) { return v < k ? Vector(v) : Vector(); },
      [k](Var v) { return v >= k ? Vector(v - k) : Vector(); });
}

std::vector<FreeTerm> FreeMonad::basis_terms(std::size_t arity, std::size_t k) const {
  std::vector<FreeTerm> out;
  if (P_->dim(arity) == 0) return out;
  if (k == 0) {
    if (arity == 0) return basis_for_word(std::vector<Var>{});
    return out;
  }
  // Enumerate multisets as non-decreasing words.
  std::vector<Var> w(arity, 0);
  while (true) {
    auto b = basis_for_word(w);
    out.insert(out.end(), b.begin(), b.end());
    std::size_t i = arity;
    while (i > 0 && w[i - 1] == k - 1) --i;
    if (i == 0) break;
    ++w[i - 1];
    for (std::size_t j = i; j < arity; ++j) w[j] = w[i - 1];
  }
  return out;
}

std::vector<FreeTerm> FreeMonad::basis_terms_up_to(std::size_t max_arity, std::size_t k) const {
  std::vector<FreeTerm> out;
  for (std::size_t n = 0; n <= max_arity; ++n) {
    auto b = basis_terms(n, k);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

FreeElement monad_unit(const FreeMonad& S, Var v) { return S.unit(v); }
FreeElement monad_mult(const FreeMonad& S, const Free<FreeTerm>& e) { return S.mult(e); }
FreeElement functor_map(const FreeMonad& S, const FreeElement& e, const LinearMap& f) { return S.map_linear(e, f); }
FreeElement diff_transform(const FreeMonad& S, const FreeElement& e, std::size_t k) { return S.diff(e, k); }
std::pair<FreeElement, FreeElement> dist_law(const FreeMonad& S, const FreeElement& e, std::size_t k) {
  return S.lambda(e, k);
}

FreeElement partial_from_lambda(const FreeMonad& S, const FreeElement& e, std::size_t k) {
  // <1,0,0,1>: V -> (V x V) x (V x V), v -> (v, 0, 0, v)
  auto lifted = S.map<Var, Var>(e, [k](Var v) {
    Vector out(v);
    out.add(v + 3 * k, Scalar(1));
    return out;
  });
  return S.lambda(lifted, 2 * k).second;
}

bool counit_exists(const Operad& P) {
  return P.dim(1) == 1 && !P.unit().coeffs.is_zero();
}

Vector dlinear_counit(const FreeMonad& S, const FreeElement& e) {
  const auto& P = S.operad();
  if (!counit_exists(P))
    throw DomainError("operad " + P.name() + " has no D-linear counit: P(1) is not spanned by the unit");
  Scalar u = P.unit().coeffs.coeff(0);
  Vector out;
  for (const auto& [t, c] : e)
    if (t.arity == 1) out.add(t.word[0], c / u);
  return out;
}

std::string render_term(const Operad& P, const FreeTerm& t, const BasedModule& V) {
  auto name = [&](Var v) { return V.name(v); };
  const auto flavor = P.flavor();
  std::ostringstream os;
  if (flavor == "com") {
    if (t.arity == 0) return "1";
    for (std::size_t i = 0; i < t.word.size();) {
      std::size_t j = i;
      while (j < t.word.size() && t.word[j] == t.word[i]) ++j;
      os << (i ? "*" : "") << name(t.word[i]);
      if (j - i > 1) os << "^" << j - i;
      i = j;
    }
    return os.str();
  }
  if (flavor == "ass") {
    if (t.arity == 0) return "1";
    for (std::size_t i = 0; i < t.word.size(); ++i) os << (i ? "*" : "") << name(t.word[i]);
    return os.str();
  }
  if (flavor == "lie") {
    auto head = arrangement_unrank(t.arity - 1, t.op);
    std::string s = name(t.word.back());
    for (auto it = head.rbegin(); it != head.rend(); ++it)
      s = "[" + name(t.word[static_cast<std::size_t>(*it - 1)]) + "," + s + "]";
    return s;
  }
  os << P.symbol(t.arity, t.op) << "(";
  for (std::size_t i = 0; i < t.word.size(); ++i) os << (i ? "," : "") << name(t.word[i]);
  os << ")";
  return os.str();
}

std::string render_free(const Operad& P, const FreeElement& e, const BasedModule& V) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : e) {
    Scalar a = c;
    bool neg = a < Scalar(0);
    if (neg) a = -a;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    auto body = render_term(P, t, V);
    if (body == "1")
      os << a;
    else if (a.is_one())
      os << body;
    else
      os << a << "*" << body;
    first = false;
  }
  return os.str();
}

Scalar RandomFree::coefficient() {
  return Scalar(static_cast<long>(std::uniform_int_distribution<int>(coeff_min, coeff_max)(rng)));
}

FreeElement RandomFree::element(const FreeMonad& S, std::size_t k, std::size_t max_arity, std::size_t min_arity) {
  const auto& P = S.operad();
  std::vector<std::size_t> arities;
  for (std::size_t n = min_arity; n <= max_arity; ++n)
    if (P.dim(n) > 0 && (k > 0 || n == 0)) arities.push_back(n);
  FreeElement out;
  if (arities.empty()) return out;
  std::size_t terms = 1 + below(max_terms);
  for (std::size_t i = 0; i < terms; ++i) {
    std::size_t n = arities[below(arities.size())];
    std::vector<Var> w(n);
    for (auto& v : w) v = below(k);
    out.add(S.canonicalize(OperadElement::basis(n, below(P.dim(n))), w), coefficient());
  }
  return out;
}

namespace {

// A random basis term of S(P, V) of the given arity, or nullopt if the drawn
// term cancels.
std::optional<FreeTerm> random_basis_term(RandomFree& R, const FreeMonad& S, std::size_t k, std::size_t n) {
  const auto& P = S.operad();
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<Var> w(n);
    for (auto& v : w) v = R.below(k);
    auto e = S.canonicalize(OperadElement::basis(n, R.below(P.dim(n))), w);
    if (e.is_zero()) continue;
    auto it = e.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(R.below(e.size())));
    return it->first;
  }
  return std::nullopt;
}

std::vector<std::size_t> usable_arities(const Operad& P, std::size_t lo, std::size_t hi, std::size_t k) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n)
    if (P.dim(n) > 0 && (k > 0 || n == 0)) out.push_back(n);
  return out;
}

}  // namespace

Free<FreeTerm> RandomFree::nested(const FreeMonad& S, std::size_t k, std::size_t max_total) {
  const auto& P = S.operad();
  Free<FreeTerm> out;
  std::size_t terms = 1 + below(max_terms);
  for (std::size_t i = 0; i < terms; ++i) {
    auto outer = usable_arities(P, 0, std::min<std::size_t>(3, max_total), 1);
    if (outer.empty()) break;
    std::size_t m = outer[below(outer.size())];
    std::size_t budget = max_total;
    std::vector<FreeTerm> word;
    bool ok = true;
    for (std::size_t j = 0; j < m && ok; ++j) {
      // leave at least one unit of budget for later slots when possible
      std::size_t reserve = m - j - 1;
      auto inner = usable_arities(P, 0, budget > reserve ? budget - reserve : 0, k);
      if (inner.empty()) {
        ok = false;
        break;
      }
      std::size_t n = inner[below(inner.size())];
      auto t = random_basis_term(*this, S, k, n);
      if (!t) {
        ok = false;
        break;
      }
      budget -= std::min(budget, n);
      word.push_back(*t);
    }
    if (!ok) continue;
    out.add(S.canonicalize(OperadElement::basis(m, below(P.dim(m))), word), coefficient());
  }
  return out;
}

Free<Term<FreeTerm>> RandomFree::nested3(const FreeMonad& S, std::size_t k, std::size_t max_total) {
  const auto& P = S.operad();
  Free<Term<FreeTerm>> out;
  std::size_t terms = 1 + below(max_terms);
  for (std::size_t i = 0; i < terms; ++i) {
    auto outer = usable_arities(P, 1, 2, 1);
    if (outer.empty()) break;
    std::size_t m = outer[below(outer.size())];
    std::vector<Term<FreeTerm>> word;
    for (std::size_t j = 0; j < m; ++j) {
      auto inner = nested(S, k, std::max<std::size_t>(1, max_total / m));
      if (inner.is_zero()) break;
      auto it = inner.begin();
      std::advance(it, static_cast<std::ptrdiff_t>(below(inner.size())));
      word.push_back(it->first);
    }
    if (word.size() != m) continue;
    out.add(S.canonicalize(OperadElement::basis(m, below(P.dim(m))), word), coefficient());
  }
  return out;
}

LinearMap RandomFree::linear_map(std::size_t dom, std::size_t cod) {
  LinearMap f(dom, cod);
  for (std::size_t j = 0; j < dom; ++j) {
    Vector c;
    for (std::size_t i = 0; i < cod; ++i) c.add(i, coefficient());
    f.set_column(j, std::move(c));
  }
  return f;
}

}  // namespace operadiff
