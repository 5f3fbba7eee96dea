#include "operadiff/presentation.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace operadiff {

GradedAlgebra ungraded(PAlgebra A) {
  auto n = A.dim();
  return GradedAlgebra{std::make_shared<const PAlgebra>(std::move(A)), std::vector<std::size_t>(n, 0)};
}

GradedAlgebra with_grading(PAlgebra A, std::vector<std::size_t> weight, std::size_t exact_up_to) {
  if (weight.size() != A.dim()) throw InputError("grading has the wrong length");
  for (const auto& table : A.tables())
    for (const auto& [idx, v] : table) {
      std::size_t w = 0;
      for (auto i : idx) w += weight[i];
      for (const auto& [o, c] : v)
        if (weight[o] != w) throw InputError("generator table is not homogeneous for the grading");
    }
  return GradedAlgebra{std::make_shared<const PAlgebra>(std::move(A)), std::move(weight), exact_up_to};
}

GradedAlgebra graded_truncated_polynomial(std::size_t n) {
  std::vector<std::size_t> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = i;
  return with_grading(truncated_polynomial_algebra(n), w);
}

// ---------------------------------------------------------------- labels

std::size_t LabelSet::index(unsigned mask) const {
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (masks[i] == mask) return i;
  throw InputError("label not present in the label set");
}

std::size_t LabelSet::degree(std::size_t i) const { return static_cast<std::size_t>(std::popcount(masks.at(i))); }

std::string LabelSet::prefix(std::size_t i) const {
  std::string s;
  for (std::size_t m = marks.size(); m-- > 0;)
    if (masks.at(i) & (1u << m)) s += marks[m];
  return s;
}

LabelSet LabelSet::point() { return LabelSet{{}, {0}}; }
LabelSet LabelSet::tangent() { return LabelSet{{"d"}, {0, 1}}; }

LabelSet LabelSet::pullback(std::size_t n) {
  LabelSet L;
  L.masks.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    L.marks.push_back("d" + std::to_string(i + 1));
    L.masks.push_back(1u << i);
  }
  return L;
}

LabelSet LabelSet::iterated(std::size_t n) {
  LabelSet L;
  for (std::size_t i = 0; i < n; ++i) L.marks.push_back("d" + std::string(i, '\''));
  for (unsigned m = 0; m < (1u << n); ++m) L.masks.push_back(m);
  return L;
}

// ---------------------------------------------------------------- modules

Report check_module(const AlgebraModule& M, std::size_t bound) {
  const auto& E = *M.extension;
  Report r = check_algebra_axioms(E, bound);
  r.subject = "operadic module over a " + E.operad().name() + "-algebra";
  auto& closed = r.add("base-closed", "operations on base elements stay in the base");
  auto& square_zero = r.add("square-zero", "operations with two module inputs vanish");
  auto& ideal = r.add("module-ideal", "operations with one module input land in the module");
  auto gens = E.operad().generators();
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (const auto& [idx, v] : E.tables()[g]) {
      std::size_t in_m = 0;
      for (auto i : idx) in_m += i >= M.base_dim;
      bool base_only = true, module_only = true;
      for (const auto& [o, c] : v) {
        base_only = base_only && o < M.base_dim;
        module_only = module_only && o >= M.base_dim;
      }
      std::string where = gens[g].name + " on entry of the table";
      if (in_m == 0) closed.record(base_only, where);
      if (in_m == 1) ideal.record(module_only, where);
      if (in_m >= 2) square_zero.record(v.is_zero(), where);
    }
  return r;
}

// ---------------------------------------------------------------- presentations

Presentation::Presentation(Family f, GradedAlgebra base, LabelSet labels, PresentationBounds b,
                           std::size_t module_base_dim)
    : family_(f),
      S_(base->operad_ptr()),
      base_(std::move(base)),
      labels_(std::move(labels)),
      bounds_(b),
      module_base_dim_(module_base_dim) {
  const auto& A = *base_;
  std::vector<std::string> names;
  if (family_ == Family::Weil) {
    // d(x) instead of dx when the short form clashes with a base name
    bool wrap = false;
    for (std::size_t l = 1; l < labels_.size(); ++l)
      for (const auto& n : A.carrier().names()) wrap = wrap || A.carrier().find(labels_.prefix(l) + n).has_value();
    for (std::size_t l = 0; l < labels_.size(); ++l)
      for (std::size_t a = 0; a < A.dim(); ++a) {
        letters_.push_back({l, a, labels_.degree(l), base_.weight[a]});
        const auto& n = A.carrier().name(a);
        names.push_back(l == 0 ? n : labels_.prefix(l) + (wrap ? "(" + n + ")" : n));
      }
  } else {
    for (std::size_t a = 0; a < A.dim(); ++a) {
      bool m = a >= module_base_dim_;
      letters_.push_back({m ? 1u : 0u, a, m ? 1u : 0u, base_.weight[a]});
      names.push_back(A.carrier().name(a));
    }
  }
  names_ = BasedModule(names);
}

std::shared_ptr<const Presentation> Presentation::weil(GradedAlgebra A, LabelSet labels, PresentationBounds b) {
  if (labels.masks.empty() || labels.masks[0] != 0) throw InputError("label sets start with the empty label");
  for (auto m : labels.masks)
    for (unsigned sub = m; sub; sub = (sub - 1) & m) labels.index(sub);  // downward closed
  return std::shared_ptr<const Presentation>(new Presentation(Family::Weil, std::move(A), std::move(labels), b, 0));
}

std::shared_ptr<const Presentation> Presentation::free_over_module(AlgebraModule M, PresentationBounds b) {
  auto base_dim = M.base_dim;
  return std::shared_ptr<const Presentation>(
      new Presentation(Family::Module, std::move(M.extension), LabelSet::point(), b, base_dim));
}

std::size_t Presentation::letter_index(std::size_t label, std::size_t base) const {
  if (family_ != Family::Weil) return base;
  return label * base_->dim() + base;
}

FreeElement Presentation::lift(std::size_t label, const Vector& a) const {
  FreeElement out;
  for (const auto& [i, c] : a) out.add(S_.unit(letter_index(label, i)), c);
  return out;
}

std::size_t Presentation::max_weight() const { return std::min(bounds_.max_weight, base_.exact_up_to); }

std::size_t Presentation::arity_bound(std::size_t degree, std::size_t weight) const {
  return std::max(degree, weight) + bounds_.arity_slack;
}

bool Presentation::in_bounds(std::size_t degree, std::size_t weight) const {
  return degree <= bounds_.max_degree && weight <= max_weight();
}

CellKey Presentation::grade(const FreeTerm& t) const {
  std::size_t d = 0, w = 0;
  for (auto v : t.word) {
    d += letters_.at(v).degree;
    w += letters_.at(v).weight;
  }
  return {d, w};
}

template <class F>
void Presentation::for_words(const std::vector<std::size_t>& pool, std::size_t count, std::size_t degree,
                             std::size_t weight, bool exact, F&& f) const {
  // sorted multisets of letters from pool with the given size, degree and weight
  std::vector<std::size_t> word;
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t from, std::size_t d, std::size_t w) {
    if (word.size() == count) {
      if ((!exact || (d == degree && w == weight))) f(word);
      return;
    }
    for (std::size_t p = from; p < pool.size(); ++p) {
      const auto& L = letters_[pool[p]];
      if (d + L.degree > degree || w + L.weight > weight) continue;
      word.push_back(pool[p]);
      rec(p, d + L.degree, w + L.weight);
      word.pop_back();
    }
  };
  rec(0, 0, 0);
}

std::vector<Seed> Presentation::seeds(std::size_t max_degree, std::size_t max_weight, std::size_t max_arity) const {
  const auto& A = *base_;
  const auto& P = operad();
  std::vector<Seed> out;
  auto limit = [&](std::size_t n) { return !P.max_arity() || n <= *P.max_arity(); };
  if (family_ == Family::Weil) {
    std::vector<std::size_t> pool(A.dim());
    for (std::size_t a = 0; a < A.dim(); ++a) pool[a] = letter_index(0, a);
    for (std::size_t l = 0; l < labels_.size(); ++l) {
      const std::size_t deg = labels_.degree(l);
      if (deg > max_degree) continue;
      const unsigned mask = labels_.masks[l];
      std::vector<unsigned> bits;
      for (unsigned b = 0; b < 32; ++b)
        if (mask & (1u << b)) bits.push_back(1u << b);
      for (std::size_t n = 0; n <= max_arity && limit(n); ++n) {
        if (P.dim(n) == 0) continue;
        for_words(pool, n, 0, max_weight, false, [&](const std::vector<std::size_t>& word) {
          std::vector<std::size_t> args(word.begin(), word.end());  // base indices coincide with label-0 letters
          for (std::size_t i = 0; i < P.dim(n); ++i) {
            FreeElement r = lift(l, A.evaluate_basis(n, i, args));
            // distribute the marks of L over the n slots
            if (n > 0 || bits.empty()) {
              std::vector<std::size_t> slot(bits.size(), 0);
              while (true) {
                std::vector<unsigned> per(n, 0);
                for (std::size_t b = 0; b < bits.size(); ++b) per[slot[b]] |= bits[b];
                std::vector<Var> w(n);
                for (std::size_t s = 0; s < n; ++s) w[s] = letter_index(labels_.index(per[s]), args[s]);
                r -= S_.canonicalize(OperadElement::basis(n, i), w);
                std::size_t b = 0;
                while (b < bits.size() && ++slot[b] == n) slot[b++] = 0;
                if (b == bits.size()) break;
              }
            }
            if (r.is_zero()) continue;
            std::size_t w = 0;
            for (auto a : args) w += base_.weight[a];
            out.push_back({std::move(r), deg, w, n,
                           (deg ? labels_.prefix(l) + " of " : "") + P.symbol(n, i) + "(" +
                               [&] {
                                 std::string s;
                                 for (std::size_t k = 0; k < n; ++k) s += (k ? "," : "") + A.carrier().name(args[k]);
                                 return s;
                               }() +
                               ")"});
          }
        });
      }
    }
  } else {
    std::vector<std::size_t> pool(A.dim());
    for (std::size_t a = 0; a < A.dim(); ++a) pool[a] = a;
    for (std::size_t n = 0; n <= max_arity && limit(n); ++n) {
      if (P.dim(n) == 0) continue;
      for_words(pool, n, std::min<std::size_t>(1, max_degree), max_weight, false,
                [&](const std::vector<std::size_t>& word) {
                  for (std::size_t i = 0; i < P.dim(n); ++i) {
                    FreeElement r = lift(0, A.evaluate_basis(n, i, word));
                    r -= S_.canonicalize(OperadElement::basis(n, i), std::vector<Var>(word.begin(), word.end()));
                    if (r.is_zero()) continue;
                    std::size_t d = 0, w = 0;
                    for (auto a : word) {
                      d += letters_[a].degree;
                      w += letters_[a].weight;
                    }
                    std::string s;
                    for (std::size_t k = 0; k < n; ++k) s += (k ? "," : "") + A.carrier().name(word[k]);
                    out.push_back({std::move(r), d, w, n, P.symbol(n, i) + "(" + s + ")"});
                  }
                });
    }
  }
  for (const auto& s : out) {
    for (const auto& [t, c] : s.relation) {
      auto g = grade(t);
      if (g.first != s.degree || g.second != s.weight)
        throw InputError("relation " + s.label + " is not homogeneous; the grading of the base is inconsistent");
    }
  }
  return out;
}

PresentationCell Presentation::build_cell(std::size_t degree, std::size_t weight, std::size_t W) const {
  const auto& P = operad();
  PresentationCell cell;
  cell.degree = degree;
  cell.weight = weight;
  cell.arity_bound = W;
  std::vector<std::size_t> pool(letters_.size());
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
  auto limit = [&](std::size_t n) { return !P.max_arity() || n <= *P.max_arity(); };
  for (std::size_t n = 0; n <= W && limit(n); ++n) {
    if (P.dim(n) == 0) continue;
    for_words(pool, n, degree, weight, true, [&](const std::vector<std::size_t>& word) {
      for (auto& t : S_.basis_for_word(std::vector<Var>(word.begin(), word.end()))) cell.terms.push_back(t);
    });
  }
  // high arity first, so that low-arity terms are kept as representatives
  std::stable_sort(cell.terms.begin(), cell.terms.end(),
                   [](const FreeTerm& a, const FreeTerm& b) { return a.arity > b.arity; });
  for (std::size_t i = 0; i < cell.terms.size(); ++i) cell.index[cell.terms[i]] = i;

  Echelon rel;
  auto add = [&](const FreeElement& e) {
    Vector v;
    for (const auto& [t, c] : e) {
      auto it = cell.index.find(t);
      if (it == cell.index.end()) throw Error("relation instance leaves its cell");
      v.add(it->second, c);
    }
    ++cell.relation_instances;
    rel.insert(std::move(v));
  };
  // seeds of generating operations generate the same ideal
  auto all = seeds(degree, weight, std::min(W, generator_arity(P)));
  for (std::size_t m = 1; m <= W && limit(m); ++m) {
    if (P.dim(m) == 0) continue;
    for (const auto& s : all) {
      if (std::max<std::size_t>(s.arity, 1) + m - 1 > W) continue;
      for_words(pool, m - 1, degree - s.degree, weight - s.weight, true, [&](const std::vector<std::size_t>& ys) {
        std::vector<FreeElement> args{s.relation};
        for (auto y : ys) args.push_back(S_.unit(y));
        for (std::size_t nu = 0; nu < P.dim(m); ++nu) {
          if (m == 1 && OperadElement::basis(1, nu) == P.unit()) {
            add(s.relation);
            continue;
          }
          add(S_.apply(OperadElement::basis(m, nu), args));
        }
      });
    }
  }
  cell.quotient = quotient_basis(cell.terms.size(), std::move(rel));
  return cell;
}

const PresentationCell& Presentation::cell(std::size_t degree, std::size_t weight) const {
  if (!in_bounds(degree, weight))
    throw TruncationError("cell (degree " + std::to_string(degree) + ", weight " + std::to_string(weight) +
                          ") is outside the presentation bounds");
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = cells_.find({degree, weight});
    if (it != cells_.end()) return *it->second;
  }
  auto W = arity_bound(degree, weight);
  auto c = std::make_shared<PresentationCell>(build_cell(degree, weight, W));
  if (bounds_.check_stability) c->stable = build_cell(degree, weight, W + 1).dim() == c->dim();
  std::lock_guard<std::mutex> g(mu_);
  auto [it, inserted] = cells_.emplace(CellKey{degree, weight}, std::move(c));
  return *it->second;
}

CellTable Presentation::cell_dims() const {
  CellTable t;
  for (std::size_t d = 0; d <= bounds_.max_degree; ++d)
    for (std::size_t w = 0; w <= max_weight(); ++w) t[{d, w}] = dim(d, w);
  return t;
}

bool Presentation::stable() const {
  std::lock_guard<std::mutex> g(mu_);
  for (const auto& [k, c] : cells_)
    if (!c->stable.value_or(false)) return false;
  return !cells_.empty();
}

const PresentationCell& Presentation::widened_cell(std::size_t degree, std::size_t weight, std::size_t W) const {
  std::array<std::size_t, 3> key{degree, weight, W};
  {
    std::lock_guard<std::mutex> g(mu_);
    auto it = wide_.find(key);
    if (it != wide_.end()) return *it->second;
  }
  auto c = std::make_shared<PresentationCell>(build_cell(degree, weight, W));
  std::lock_guard<std::mutex> g(mu_);
  return *wide_.emplace(key, std::move(c)).first->second;
}

std::map<CellKey, Vector> Presentation::coordinates(const FreeElement& e) const {
  std::map<CellKey, FreeElement> by_grade;
  for (const auto& [t, c] : e) by_grade[grade(t)].add(t, c);
  std::map<CellKey, Vector> out;
  for (const auto& [g, part] : by_grade) {
    const auto& cl = cell(g.first, g.second);
    std::size_t longest = 0;
    for (const auto& [t, c] : part) longest = std::max(longest, t.arity);
    Vector q;
    auto project = [&](const PresentationCell& C, const FreeElement& x) {
      Vector v;
      for (const auto& [t, c] : x) v.add(C.index.at(t), c);
      return C.quotient.projection.apply(v);
    };
    if (longest <= cl.arity_bound) {
      q = project(cl, part);
    } else {
      // reduce in the widened cell, then read its representatives back
      const auto& wide = widened_cell(g.first, g.second, longest);
      for (const auto& [i, c] : project(wide, part)) {
        const auto& t = wide.terms[wide.quotient.representatives[i]];
        if (t.arity > cl.arity_bound)
          throw TruncationError("term of arity " + std::to_string(t.arity) + " does not reduce below the arity bound " +
                                std::to_string(cl.arity_bound) + " of its cell");
        q.add(project(cl, FreeElement(t)), c);
      }
    }
    if (!q.is_zero()) out[g] = std::move(q);
  }
  return out;
}

bool Presentation::is_zero(const FreeElement& e) const { return coordinates(e).empty(); }

FreeElement Presentation::representative(const CellKey& c, std::size_t i) const {
  const auto& cl = cell(c.first, c.second);
  return FreeElement(cl.terms.at(cl.quotient.representatives.at(i)));
}

FreeElement Presentation::normal_form(const FreeElement& e) const {
  FreeElement out;
  for (const auto& [g, v] : coordinates(e))
    for (const auto& [i, c] : v) out.add(representative(g, i), c);
  return out;
}

std::string Presentation::render(const FreeElement& e) const { return render_free(operad(), e, names_); }

// ---------------------------------------------------------------- materialization

Materialized materialize(PresentationPtr X, std::size_t max_degree, std::size_t max_weight) {
  Materialized M;
  M.presentation = X;
  max_degree = std::min(max_degree, X->bounds().max_degree);
  max_weight = std::min(max_weight, X->max_weight());
  std::vector<std::string> names;
  std::vector<std::size_t> weights;
  std::vector<FreeElement> reps;
  for (std::size_t d = 0; d <= max_degree; ++d)
    for (std::size_t w = 0; w <= max_weight; ++w) {
      const auto& cl = X->cell(d, w);
      M.offset[{d, w}] = names.size();
      for (std::size_t i = 0; i < cl.dim(); ++i) {
        reps.push_back(X->representative({d, w}, i));
        names.push_back(X->render(reps.back()));
        weights.push_back(d + w);
      }
    }
  const auto& P = X->operad();
  const auto& S = X->monad();
  auto gens = P.generators();
  std::vector<GeneratorTable> tables(gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<std::size_t> idx(gens[g].arity, 0);
    if (gens[g].arity > 0 && reps.empty()) continue;
    while (true) {
      std::vector<FreeElement> args;
      for (auto i : idx) args.push_back(reps[i]);
      auto prod = S.apply(OperadElement::basis(gens[g].arity, gens[g].basis_index), args);
      // drop terms beyond the materialized cells
      FreeElement kept;
      for (const auto& [t, c] : prod) {
        auto gr = X->grade(t);
        if (gr.first <= max_degree && gr.second <= max_weight) kept.add(t, c);
      }
      auto v = M.embed(kept);
      if (!v.is_zero()) tables[g][idx] = v;
      std::size_t k = idx.size();
      while (k > 0 && ++idx[k - 1] == reps.size()) idx[--k] = 0;
      if (k == 0) break;
    }
  }
  // names may repeat when representatives render alike; disambiguate
  std::map<std::string, int> seen;
  for (auto& n : names)
    if (seen[n]++) n += "#" + std::to_string(seen[n]);
  PAlgebra alg(X->base()->operad_ptr(), BasedModule(names), std::move(tables));
  std::size_t exact = std::min(max_degree, max_weight);
  M.algebra = GradedAlgebra{std::make_shared<const PAlgebra>(std::move(alg)), weights, exact};
  return M;
}

Vector Materialized::embed(const FreeElement& e) const {
  Vector out;
  for (const auto& [g, v] : presentation->coordinates(e)) {
    auto it = offset.find(g);
    if (it == offset.end()) continue;
    for (const auto& [i, c] : v) out.add(it->second + i, c);
  }
  return out;
}

FreeElement Materialized::element(const Vector& v) const {
  FreeElement out;
  for (const auto& [i, c] : v) {
    auto it = std::prev(std::upper_bound(offset.begin(), offset.end(), i,
                                         [](std::size_t x, const auto& kv) { return x < kv.second; }));
    // skip empty cells sharing the offset
    while (std::next(it) != offset.end() && std::next(it)->second == it->second) ++it;
    out.add(presentation->representative(it->first, i - it->second), c);
  }
  return out;
}

// ---------------------------------------------------------------- maps

FreeElement apply_map(const PresentationMap& f, const FreeElement& e) {
  const auto& S = f.target->monad();
  return S.mult(S.map<Var, FreeTerm>(e, [&](const Var& v) { return f.images.at(v); }));
}

PresentationMap compose(const PresentationMap& g, const PresentationMap& f) {
  PresentationMap out{g.name + " o " + f.name, f.source, g.target, {}};
  for (const auto& im : f.images) out.images.push_back(apply_map(g, im));
  return out;
}

PresentationMap identity_map(PresentationPtr X) {
  PresentationMap out{"1", X, X, {}};
  for (std::size_t i = 0; i < X->letter_count(); ++i) out.images.push_back(X->letter_element(i));
  return out;
}

PresentationMap label_map(std::string name, PresentationPtr source, PresentationPtr target,
                          const std::vector<std::vector<std::pair<unsigned, Scalar>>>& by_mask) {
  if (source->family() != Presentation::Family::Weil || target->family() != Presentation::Family::Weil)
    throw InputError("label maps need labelled presentations");
  if (by_mask.size() != source->labels().size()) throw InputError("label map needs one entry per source label");
  PresentationMap out{std::move(name), source, target, {}};
  for (std::size_t i = 0; i < source->letter_count(); ++i) {
    const auto& L = source->letter(i);
    FreeElement img;
    for (const auto& [mask, c] : by_mask[L.label])
      img.add(target->letter_element(target->letter_index(target->labels().index(mask), L.base)), c);
    out.images.push_back(img);
  }
  return out;
}

PresentationMap functorial_map(std::string name, PresentationPtr source, PresentationPtr target, const LinearMap& f) {
  if (source->labels().masks != target->labels().masks) throw InputError("functorial maps keep the labels");
  PresentationMap out{std::move(name), source, target, {}};
  for (std::size_t i = 0; i < source->letter_count(); ++i) {
    const auto& L = source->letter(i);
    out.images.push_back(target->lift(L.label, f.column(L.base)));
  }
  return out;
}

Report check_well_defined(const PresentationMap& f) {
  Report r;
  r.subject = "well-definedness of " + f.name;
  auto& c = r.add("respects-relations", "generating relations map to zero");
  std::size_t skipped = 0;
  const auto& X = *f.source;
  for (const auto& s : X.seeds(X.bounds().max_degree, X.max_weight(), generator_arity(X.operad()))) {
    if (s.arity > X.arity_bound(s.degree, s.weight)) continue;
    auto img = apply_map(f, s.relation);
    try {
      bool ok = f.target->is_zero(img);
      c.record_lazy(ok, [&] { return "relation " + s.label + " maps to " + f.target->render(f.target->normal_form(img)); });
    } catch (const TruncationError&) {
      ++skipped;
    }
  }
  if (skipped) r.add("skipped", "relations whose image leaves the target bounds").instances = skipped;
  return r;
}

bool equal_on_letters(const PresentationMap& f, const PresentationMap& g, std::string* witness) {
  if (f.images.size() != g.images.size()) {
    if (witness) *witness = "different sources";
    return false;
  }
  for (std::size_t i = 0; i < f.images.size(); ++i) {
    if (f.images[i] == g.images[i]) continue;
    if (f.target->is_zero(f.images[i] - g.images[i])) continue;
    if (witness)
      *witness = f.source->letter_names().name(i) + " -> " + f.target->render(f.images[i]) + " vs " +
                 g.target->render(g.images[i]);
    return false;
  }
  return true;
}

Vector evaluate(const AlgebraMap& f, const FreeElement& e) {
  Vector out;
  for (const auto& [t, c] : e) {
    std::vector<Vector> args;
    for (auto v : t.word) args.push_back(f.images.at(v));
    out.add(f.target->evaluate(OperadElement::basis(t.arity, t.op), args), c);
  }
  return out;
}

AlgebraMap compose(const AlgebraMap& g, const PresentationMap& f) {
  AlgebraMap out{g.name + " o " + f.name, f.source, g.target, {}};
  for (const auto& im : f.images) out.images.push_back(evaluate(g, im));
  return out;
}

Report check_well_defined(const AlgebraMap& f) {
  Report r;
  r.subject = "well-definedness of " + f.name;
  auto& c = r.add("respects-relations", "generating relations evaluate to zero");
  const auto& X = *f.source;
  for (const auto& s : X.seeds(X.bounds().max_degree, GradedAlgebra::unbounded, generator_arity(X.operad()))) {
    if (s.arity > X.arity_bound(s.degree, s.weight)) continue;
    auto v = evaluate(f, s.relation);
    c.record_lazy(v.is_zero(), [&] { return "relation " + s.label + " evaluates to " + render_vector(v, f.target->carrier()); });
  }
  return r;
}

bool equal_on_letters(const AlgebraMap& f, const AlgebraMap& g, std::string* witness) {
  for (std::size_t i = 0; i < f.images.size(); ++i)
    if (!(f.images[i] == g.images.at(i))) {
      if (witness)
        *witness = f.source->letter_names().name(i) + " -> " + render_vector(f.images[i], f.target->carrier()) + " vs " +
                   render_vector(g.images[i], g.target->carrier());
      return false;
    }
  return true;
}

std::string render_cell_table(const CellTable& t) {
  std::size_t maxd = 0, maxw = 0;
  for (const auto& [k, v] : t) {
    maxd = std::max(maxd, k.first);
    maxw = std::max(maxw, k.second);
  }
  std::ostringstream os;
  os << "degree\\weight";
  for (std::size_t w = 0; w <= maxw; ++w) os << " " << w;
  for (std::size_t d = 0; d <= maxd; ++d) {
    os << "\n" << d << ":";
    for (std::size_t w = 0; w <= maxw; ++w) {
      auto it = t.find({d, w});
      os << " " << (it == t.end() ? std::string("-") : std::to_string(it->second));
    }
  }
  return os.str();
}

}  // namespace operadiff
