#pragma once

#include "operadiff/palgebra.hpp"

#include <limits>

namespace operadiff {

// P-algebra with an additive grading of its basis. Cells of weight above
// exact_up_to may have lost products to truncation.
struct GradedAlgebra {
  static constexpr std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  AlgebraPtr algebra;
  std::vector<std::size_t> weight;
  std::size_t exact_up_to = unbounded;

  const PAlgebra& operator*() const { return *algebra; }
  const PAlgebra* operator->() const { return algebra.get(); }
};

// All weights zero.
GradedAlgebra ungraded(PAlgebra A);
// Throws InputError unless every generator table entry is homogeneous.
GradedAlgebra with_grading(PAlgebra A, std::vector<std::size_t> weight,
                           std::size_t exact_up_to = GradedAlgebra::unbounded);
// Q[x]/(x^n) graded by the power of x.
GradedAlgebra graded_truncated_polynomial(std::size_t n);

// Sets of d-marks labelling the generators of T°-type presentations.
// Letter (L, a) stands for d_L(a). Masks are downward closed and masks[0] = 0.
struct LabelSet {
  std::vector<std::string> marks;
  std::vector<unsigned> masks;

  std::size_t size() const { return masks.size(); }
  std::size_t index(unsigned mask) const;
  std::size_t degree(std::size_t i) const;
  // Rendered marks, outermost first: mask {d, d'} gives "d'd".
  std::string prefix(std::size_t i) const;

  static LabelSet point();                          // A itself
  static LabelSet tangent();                        // T°(A): a, d(a)
  static LabelSet pullback(std::size_t n);          // T°_n(A): a, d1(a)..dn(a)
  static LabelSet iterated(std::size_t n);          // T°^n(A): all subsets of d, d', d''..
};

struct PresentationBounds {
  std::size_t max_degree = 2;
  std::size_t max_weight = 4;
  // Terms of a cell (degree, weight) have arity <= max(degree, weight) + arity_slack.
  std::size_t arity_slack = 1;
  // Recompute every cell with one more unit of arity and compare dimensions.
  bool check_stability = false;
};

struct PresentationCell {
  std::size_t degree = 0, weight = 0, arity_bound = 0;
  std::vector<FreeTerm> terms;
  std::map<FreeTerm, std::size_t> index;
  Quotient quotient;
  std::size_t relation_instances = 0;
  std::optional<bool> stable;

  std::size_t dim() const { return quotient.dim(); }
};

// One generating relation r = 0 of a presentation with its grading.
struct Seed {
  FreeElement relation;
  std::size_t degree = 0, weight = 0, arity = 0;
  std::string label;
};

struct LetterInfo {
  std::size_t label = 0;  // label index (Weil family) or 0/1 for base/module letters
  std::size_t base = 0;   // basis index in the base algebra or extension
  std::size_t degree = 0, weight = 0;
};

using CellKey = std::pair<std::size_t, std::size_t>;  // (degree, weight)
using CellTable = std::map<CellKey, std::size_t>;

// An A-module in the operadic sense, stored as the square-zero extension
// A x M: its first base_dim basis vectors span A, the rest span M, M.M = 0.
struct AlgebraModule {
  GradedAlgebra extension;
  std::size_t base_dim = 0;

  std::size_t module_dim() const { return extension->dim() - base_dim; }
};
Report check_module(const AlgebraModule& M, std::size_t arity_bound = 3);

// Truncated generators-and-relations presentation: S(P, letters) modulo the
// ideal generated by seeds. Cells are computed on demand and cached.
class Presentation {
 public:
  enum class Family { Weil, Module };

  // Letters d_L(a); seeds d_L(mu(a..)) = sum over distributions of the marks of L
  // over the slots of mu(.. d_{L_i}(a_i) ..).
  static std::shared_ptr<const Presentation> weil(GradedAlgebra A, LabelSet labels, PresentationBounds b = {});
  // Free_A(M): letters are the basis of A x M, M-letters in degree 1; seeds
  // (mu; x..) = theta(mu; x..) for words with at most one M-letter.
  static std::shared_ptr<const Presentation> free_over_module(AlgebraModule M, PresentationBounds b = {});

  Family family() const { return family_; }
  const FreeMonad& monad() const { return S_; }
  const Operad& operad() const { return S_.operad(); }
  const GradedAlgebra& base() const { return base_; }
  const LabelSet& labels() const { return labels_; }
  const PresentationBounds& bounds() const { return bounds_; }
  const BasedModule& letter_names() const { return names_; }
  std::size_t letter_count() const { return letters_.size(); }
  const LetterInfo& letter(std::size_t i) const { return letters_.at(i); }
  // Weil family: index of letter d_L(a).
  std::size_t letter_index(std::size_t label, std::size_t base) const;
  FreeElement letter_element(std::size_t i) const { return S_.unit(i); }
  // Weil family: d_L applied to a vector of the base.
  FreeElement lift(std::size_t label, const Vector& a) const;

  std::size_t max_weight() const;
  std::size_t arity_bound(std::size_t degree, std::size_t weight) const;
  CellKey grade(const FreeTerm& t) const;
  bool in_bounds(std::size_t degree, std::size_t weight) const;

  // Throws TruncationError outside the bounds.
  const PresentationCell& cell(std::size_t degree, std::size_t weight) const;
  std::size_t dim(std::size_t degree, std::size_t weight) const { return cell(degree, weight).dim(); }
  CellTable cell_dims() const;
  // All cells stable (only meaningful with check_stability).
  bool stable() const;

  // Quotient coordinates, cell by cell. Terms longer than the arity bound are
  // reduced in a widened cell; TruncationError when that leaves the base cell's
  // representatives or the grading bounds.
  std::map<CellKey, Vector> coordinates(const FreeElement& e) const;
  bool is_zero(const FreeElement& e) const;
  FreeElement normal_form(const FreeElement& e) const;
  FreeElement representative(const CellKey& c, std::size_t i) const;
  std::string render(const FreeElement& e) const;

  // Generating relations of degree <= d, weight <= w and arity <= n.
  std::vector<Seed> seeds(std::size_t max_degree, std::size_t max_weight, std::size_t max_arity) const;

 private:
  Presentation(Family f, GradedAlgebra base, LabelSet labels, PresentationBounds b, std::size_t module_base_dim);
  PresentationCell build_cell(std::size_t degree, std::size_t weight, std::size_t arity_bound) const;
  // Same cell with a larger arity bound, for reducing long terms.
  const PresentationCell& widened_cell(std::size_t degree, std::size_t weight, std::size_t arity_bound) const;
  template <class F>
  void for_words(const std::vector<std::size_t>& pool, std::size_t count, std::size_t degree, std::size_t weight,
                 bool exact_degree, F&& f) const;

  Family family_;
  FreeMonad S_;
  GradedAlgebra base_;
  LabelSet labels_;
  PresentationBounds bounds_;
  std::size_t module_base_dim_ = 0;
  std::vector<LetterInfo> letters_;
  BasedModule names_;
  mutable std::mutex mu_;
  mutable std::map<CellKey, std::shared_ptr<PresentationCell>> cells_;
  mutable std::map<std::array<std::size_t, 3>, std::shared_ptr<PresentationCell>> wide_;
};

using PresentationPtr = std::shared_ptr<const Presentation>;

// Finite P-algebra formed by the cells within the given bounds. Products
// landing outside are dropped; weight of a cell (d, w) is d + w.
struct Materialized {
  GradedAlgebra algebra;
  PresentationPtr presentation;
  std::map<CellKey, std::size_t> offset;

  Vector embed(const FreeElement& e) const;
  // Element of the presentation for a carrier vector.
  FreeElement element(const Vector& v) const;
};
Materialized materialize(PresentationPtr X, std::size_t max_degree, std::size_t max_weight);

// Morphism of presentations given on letters.
struct PresentationMap {
  std::string name;
  PresentationPtr source, target;
  std::vector<FreeElement> images;
};
// Substitutes letter images, without reducing.
FreeElement apply_map(const PresentationMap& f, const FreeElement& e);
PresentationMap compose(const PresentationMap& g, const PresentationMap& f);
PresentationMap identity_map(PresentationPtr X);
// Letter d_L(a) goes to sum c d_L'(a) for the pairs (L', c) listed under L.
PresentationMap label_map(std::string name, PresentationPtr source, PresentationPtr target,
                          const std::vector<std::vector<std::pair<unsigned, Scalar>>>& by_mask);
// d_L(a) -> d_L(f(a)) for f: A -> B linear, same labels.
PresentationMap functorial_map(std::string name, PresentationPtr source, PresentationPtr target, const LinearMap& f);
// Every seed within the source bounds maps to zero in the target. Seeds whose
// image leaves the computed target cells are skipped and counted.
Report check_well_defined(const PresentationMap& f);
bool equal_on_letters(const PresentationMap& f, const PresentationMap& g, std::string* witness = nullptr);

// Morphism from a presentation to a finite algebra, given on letters.
struct AlgebraMap {
  std::string name;
  PresentationPtr source;
  AlgebraPtr target;
  std::vector<Vector> images;
};
Vector evaluate(const AlgebraMap& f, const FreeElement& e);
AlgebraMap compose(const AlgebraMap& g, const PresentationMap& f);
Report check_well_defined(const AlgebraMap& f);
bool equal_on_letters(const AlgebraMap& f, const AlgebraMap& g, std::string* witness = nullptr);

std::string render_cell_table(const CellTable& t);

}  // namespace operadiff
