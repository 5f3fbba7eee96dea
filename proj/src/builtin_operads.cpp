#include "operadiff/lie_rewrite.hpp"
#include "operadiff/operad.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

namespace operadiff {

namespace {

// Left-nested binary products of the given inputs with generator g.
OpTree left_comb(std::size_t g, const std::vector<int>& one_based_inputs) {
  OpTree t = OpTree::input(static_cast<std::size_t>(one_based_inputs[0] - 1));
  for (std::size_t k = 1; k < one_based_inputs.size(); ++k)
    t = OpTree::apply(g, {t, OpTree::input(static_cast<std::size_t>(one_based_inputs[k] - 1))});
  return t;
}

void require_basis(const Operad& P, std::size_t n, std::size_t i) {
  if (i >= P.dim(n))
    throw InputError("operad " + P.name() + ": basis index " + std::to_string(i) + " out of range in arity " +
                     std::to_string(n));
}

class ComOperad final : public Operad {
 public:
  std::string name() const override { return "Com"; }
  std::string flavor() const override { return "com"; }
  std::size_t dim(std::size_t) const override { return 1; }
  std::string symbol(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    return "c" + std::to_string(n);
  }
  OperadElement unit() const override { return OperadElement::basis(1, 0); }
  OperadElement act_basis(std::size_t n, std::size_t i, const Permutation&) const override {
    require_basis(*this, n, i);
    return OperadElement::basis(n, 0);
  }
  OperadElement compose_basis(std::size_t m, std::size_t, std::size_t, std::size_t n, std::size_t) const override {
    return OperadElement::basis(m + n - 1, 0);
  }
  std::vector<Generator> generators() const override { return {{"unit", 0, 0}, {"mul", 2, 0}}; }
  OpTree decompose(std::size_t n, std::size_t) const override {
    if (n == 0) return OpTree::apply(0, {});
    std::vector<int> in(n);
    std::iota(in.begin(), in.end(), 1);
    return left_comb(1, in);
  }
  CanonicalPath canonical_path() const override { return CanonicalPath::Com; }
};

// Basis of Ass(n): arrangements u of 1..n, the operation a -> a_{u1} ... a_{un}.
class AssOperad final : public Operad {
 public:
  std::string name() const override { return "Ass"; }
  std::string flavor() const override { return "ass"; }
  std::size_t dim(std::size_t n) const override { return factorial(n); }
  std::string symbol(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    if (n == 0) return "1";
    auto u = arrangement_unrank(n, i);
    std::ostringstream os;
    for (std::size_t k = 0; k < n; ++k) os << (k ? "*" : "") << "x" << u[k];
    return os.str();
  }
  OperadElement unit() const override { return OperadElement::basis(1, 0); }
  OperadElement act_basis(std::size_t n, std::size_t i, const Permutation& s) const override {
    require_basis(*this, n, i);
    auto u = arrangement_unrank(n, i);
    auto inv = s.inverse();
    for (auto& l : u) l = static_cast<int>(inv(static_cast<std::size_t>(l - 1)) + 1);
    return OperadElement::basis(n, arrangement_rank(u));
  }
  OperadElement compose_basis(std::size_t m, std::size_t a, std::size_t slot, std::size_t n,
                              std::size_t b) const override {
    require_basis(*this, m, a);
    require_basis(*this, n, b);
    auto u = arrangement_unrank(m, a);
    auto v = arrangement_unrank(n, b);
    int i = static_cast<int>(slot) + 1;
    std::vector<int> w;
    for (int l : u) {
      if (l < i)
        w.push_back(l);
      else if (l > i)
        w.push_back(l + static_cast<int>(n) - 1);
      else
        for (int x : v) w.push_back(x + i - 1);
    }
    return OperadElement::basis(m + n - 1, arrangement_rank(w));
  }
  std::vector<Generator> generators() const override { return {{"unit", 0, 0}, {"mul", 2, 0}}; }
  OpTree decompose(std::size_t n, std::size_t i) const override {
    if (n == 0) return OpTree::apply(0, {});
    return left_comb(1, arrangement_unrank(n, i));
  }
  CanonicalPath canonical_path() const override { return CanonicalPath::Ass; }
};

// Basis of Lie(n): right-normed brackets [x_{s1},[x_{s2},...,[x_{s(n-1)},x_n]]]
// indexed by the lexicographic rank of (s1..s(n-1)).
class LieOperad final : public Operad {
 public:
  std::string name() const override { return "Lie"; }
  std::string flavor() const override { return "lie"; }
  std::size_t dim(std::size_t n) const override { return n == 0 ? 0 : factorial(n - 1); }
  std::string symbol(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    return BracketTree::right_normed(leaves_of(n, i))->to_string();
  }
  OperadElement unit() const override { return OperadElement::basis(1, 0); }
  OperadElement act_basis(std::size_t n, std::size_t i, const Permutation& s) const override {
    require_basis(*this, n, i);
    if (s.is_identity()) return OperadElement::basis(n, i);
    std::vector<std::size_t> key{0, n, i};
    key.insert(key.end(), s.images().begin(), s.images().end());
    if (auto hit = lookup(key)) return *hit;
    auto leaves = leaves_of(n, i);
    auto inv = s.inverse();
    for (auto& l : leaves) l = static_cast<int>(inv(static_cast<std::size_t>(l - 1)) + 1);
    auto out = to_element(n, lie_normalize(*BracketTree::right_normed(leaves)));
    store(key, out);
    return out;
  }
  OperadElement compose_basis(std::size_t m, std::size_t a, std::size_t slot, std::size_t n,
                              std::size_t b) const override {
    require_basis(*this, m, a);
    require_basis(*this, n, b);
    std::vector<std::size_t> key{1, m, a, slot, n, b};
    if (auto hit = lookup(key)) return *hit;
    auto u = leaves_of(m, a);
    auto v = leaves_of(n, b);
    int i = static_cast<int>(slot) + 1;
    auto shift = [&](int l) { return l > i ? l + static_cast<int>(n) - 1 : l; };
    std::vector<int> shifted_v;
    for (int x : v) shifted_v.push_back(x + i - 1);
    TreePtr inner = BracketTree::right_normed(shifted_v);
    // Rebuild u's right-normed tree with leaf i replaced by inner.
    auto leaf_tree = [&](int l) { return l == i ? inner : BracketTree::make_leaf(shift(l)); };
    TreePtr t = leaf_tree(u.back());
    for (auto it = u.rbegin() + 1; it != u.rend(); ++it) t = BracketTree::bracket(leaf_tree(*it), t);
    auto out = to_element(m + n - 1, lie_normalize(*t));
    store(key, out);
    return out;
  }
  std::vector<Generator> generators() const override { return {{"bracket", 2, 0}}; }
  OpTree decompose(std::size_t n, std::size_t i) const override {
    auto leaves = leaves_of(n, i);
    OpTree t = OpTree::input(static_cast<std::size_t>(leaves.back() - 1));
    for (auto it = leaves.rbegin() + 1; it != leaves.rend(); ++it)
      t = OpTree::apply(0, {OpTree::input(static_cast<std::size_t>(*it - 1)), t});
    return t;
  }

  static std::vector<int> leaves_of(std::size_t n, std::size_t i) {
    auto head = arrangement_unrank(n - 1, i);
    head.push_back(static_cast<int>(n));
    return head;
  }

 private:
  OperadElement to_element(std::size_t n, const LinComb<RightNormed>& c) const {
    OperadElement out{n, {}};
    for (const auto& [r, v] : c) {
      if (r.back() != static_cast<int>(n)) throw Error("Lie normal form does not end in the maximal leaf");
      out.coeffs.add(arrangement_rank(std::vector<int>(r.begin(), r.end() - 1)), v);
    }
    return out;
  }
  std::optional<OperadElement> lookup(const std::vector<std::size_t>& key) const {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cache_.find(key);
    if (it == cache_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::vector<std::size_t>& key, const OperadElement& e) const {
    std::lock_guard<std::mutex> g(mu_);
    cache_.emplace(key, e);
  }
  mutable std::mutex mu_;
  mutable std::map<std::vector<std::size_t>, OperadElement> cache_;
};

class PointedOperad final : public Operad {
 public:
  explicit PointedOperad(AssocAlgebraData A) : A_(std::move(A)) {
    std::size_t d = A_.basis.dim();
    if (A_.mult.size() != d) throw InputError("pointed operad: multiplication table has wrong size");
    for (const auto& row : A_.mult)
      if (row.size() != d) throw InputError("pointed operad: multiplication table has wrong size");
  }
  std::string name() const override { return "A."; }
  std::string flavor() const override { return "pointed"; }
  std::size_t dim(std::size_t n) const override { return n == 1 ? A_.basis.dim() : 0; }
  std::string symbol(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    return A_.basis.name(i);
  }
  OperadElement unit() const override { return {1, A_.unit}; }
  OperadElement act_basis(std::size_t n, std::size_t i, const Permutation&) const override {
    require_basis(*this, n, i);
    return OperadElement::basis(n, i);
  }
  OperadElement compose_basis(std::size_t m, std::size_t a, std::size_t, std::size_t n, std::size_t b) const override {
    require_basis(*this, m, a);
    require_basis(*this, n, b);
    return {1, A_.mult[a][b]};
  }
  std::vector<Generator> generators() const override {
    std::vector<Generator> g;
    for (std::size_t i = 0; i < A_.basis.dim(); ++i) g.push_back({A_.basis.name(i), 1, i});
    return g;
  }
  OpTree decompose(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    return OpTree::apply(i, {OpTree::input(0)});
  }
  const AssocAlgebraData& algebra() const { return A_; }

 private:
  AssocAlgebraData A_;
};

class TableOperad final : public Operad {
 public:
  explicit TableOperad(OperadTableData d) : d_(std::move(d)) {
    if (d_.basis.size() != d_.max_arity + 1) throw InputError("table operad: need a basis list for every arity");
    if (d_.act.size() != d_.basis.size()) d_.act.resize(d_.basis.size());
    for (std::size_t n = 0; n <= d_.max_arity; ++n) {
      d_.act[n].resize(d_.basis[n].size());
      for (std::size_t i = 0; i < d_.basis[n].size(); ++i) {
        auto& row = d_.act[n][i];
        // Missing transposition entries default to the trivial action.
        for (std::size_t k = row.size(); k + 1 < n; ++k) row.push_back(Vector(i));
        gens_.push_back({d_.basis[n][i], n, i});
      }
    }
  }
  std::string name() const override { return d_.name; }
  std::string flavor() const override { return "table"; }
  std::optional<std::size_t> max_arity() const override { return d_.max_arity; }
  std::size_t dim(std::size_t n) const override { return n <= d_.max_arity ? d_.basis[n].size() : 0; }
  std::string symbol(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    return d_.basis[n][i];
  }
  OperadElement unit() const override { return {1, d_.unit}; }
  OperadElement act_basis(std::size_t n, std::size_t i, const Permutation& s) const override {
    require_arity(n);
    require_basis(*this, n, i);
    // Write s as a product of adjacent transpositions t1 o t2 o ... and act
    // by them in turn, using (mu.s).t = mu.(s o t).
    std::vector<std::size_t> word;
    auto img = s.images();
    // Bubble sort img back to the identity; each swap of positions k, k+1
    // multiplies s on the right by (k k+1).
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t k = 0; k + 1 < img.size(); ++k)
        if (img[k] > img[k + 1]) {
          std::swap(img[k], img[k + 1]);
          word.push_back(k);
          changed = true;
        }
    }
    // s o t_{w1} o ... o t_{wr} = id, so s = t_{wr} o ... o t_{w1}.
    OperadElement cur = OperadElement::basis(n, i);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      OperadElement next{n, {}};
      for (const auto& [b, c] : cur.coeffs) next.coeffs.add(d_.act[n][b][*it], c);
      cur = std::move(next);
    }
    return cur;
  }
  OperadElement compose_basis(std::size_t m, std::size_t a, std::size_t slot, std::size_t n,
                              std::size_t b) const override {
    require_arity(m + n - 1);
    require_basis(*this, m, a);
    require_basis(*this, n, b);
    auto it = d_.compose.find({m, a, slot, n, b});
    if (it == d_.compose.end()) return {m + n - 1, {}};
    return {m + n - 1, it->second};
  }
  std::vector<Generator> generators() const override { return gens_; }
  OpTree decompose(std::size_t n, std::size_t i) const override {
    require_basis(*this, n, i);
    std::size_t g = 0;
    for (; g < gens_.size(); ++g)
      if (gens_[g].arity == n && gens_[g].basis_index == i) break;
    std::vector<OpTree> ch;
    for (std::size_t k = 0; k < n; ++k) ch.push_back(OpTree::input(k));
    return OpTree::apply(g, std::move(ch));
  }

 private:
  OperadTableData d_;
  std::vector<Generator> gens_;
};

}  // namespace

OperadPtr make_com_operad() { return std::make_shared<ComOperad>(); }
OperadPtr make_ass_operad() { return std::make_shared<AssOperad>(); }
OperadPtr make_lie_operad() { return std::make_shared<LieOperad>(); }
OperadPtr make_pointed_operad(AssocAlgebraData A) { return std::make_shared<PointedOperad>(std::move(A)); }
OperadPtr make_table_operad(OperadTableData data) { return std::make_shared<TableOperad>(std::move(data)); }

}  // namespace operadiff
