#pragma once

#include "operadiff/linalg.hpp"
#include "operadiff/permutation.hpp"
#include "operadiff/report.hpp"

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace operadiff {

// Element of P(arity), in the basis of that component.
struct OperadElement {
  std::size_t arity = 0;
  Vector coeffs;

  static OperadElement basis(std::size_t arity, std::size_t i) { return {arity, Vector(i)}; }
  bool is_zero() const { return coeffs.is_zero(); }
  friend bool operator==(const OperadElement& a, const OperadElement& b) {
    return a.arity == b.arity && a.coeffs == b.coeffs;
  }
};

// A generating operation and the basis element of P(arity) it names.
struct Generator {
  std::string name;
  std::size_t arity = 0;
  std::size_t basis_index = 0;
};

// Basis operation written as a composite of generators. A leaf carries an
// input position (0-based); an inner node applies generators()[gen].
struct OpTree {
  std::ptrdiff_t leaf = -1;
  std::size_t gen = 0;
  std::vector<OpTree> children;

  static OpTree input(std::size_t i) { return OpTree{static_cast<std::ptrdiff_t>(i), 0, {}}; }
  static OpTree apply(std::size_t g, std::vector<OpTree> ch) { return OpTree{-1, g, std::move(ch)}; }
  bool is_leaf() const { return leaf >= 0; }
};

enum class CanonicalPath { Com, Ass, Generic };

// Symmetric operad over the scalars, presented by based components P(n) with
// a right action of the symmetric groups and partial compositions.
//
// Action convention: (mu . s)(a_1..a_n) = mu(act_word(s, a)), so acting by s
// relabels input j as s^-1(j). With this, (mu . s) . t = mu . (s o t).
class Operad {
 public:
  virtual ~Operad() = default;

  virtual std::string name() const = 0;
  virtual std::string flavor() const = 0;
  virtual std::optional<std::size_t> max_arity() const { return std::nullopt; }
  virtual std::size_t dim(std::size_t n) const = 0;
  virtual std::string symbol(std::size_t n, std::size_t i) const = 0;
  virtual OperadElement unit() const = 0;
  virtual OperadElement act_basis(std::size_t n, std::size_t i, const Permutation& s) const = 0;
  // Basis element a of P(m) composed in slot (0-based) with basis element b of P(n).
  virtual OperadElement compose_basis(std::size_t m, std::size_t a, std::size_t slot, std::size_t n,
                                      std::size_t b) const = 0;
  virtual std::vector<Generator> generators() const = 0;
  virtual OpTree decompose(std::size_t n, std::size_t i) const = 0;
  virtual CanonicalPath canonical_path() const { return CanonicalPath::Generic; }

  // Throws TruncationError when n exceeds the declared truncation.
  void require_arity(std::size_t n) const;
  std::optional<std::size_t> find_symbol(const std::string& sym) const;  // searches arities <= 8
  std::pair<std::size_t, std::size_t> symbol_index(const std::string& sym, std::size_t max_n = 8) const;
};

using OperadPtr = std::shared_ptr<const Operad>;

OperadElement partial_compose(const Operad& P, const OperadElement& mu, std::size_t slot, const OperadElement& nu);
OperadElement complete_compose(const Operad& P, const OperadElement& mu, const std::vector<OperadElement>& nus);
OperadElement sigma_act(const Operad& P, const OperadElement& mu, const Permutation& s);
// Operad element obtained by composing the generators along a tree.
OperadElement tree_element(const Operad& P, const OpTree& t, std::size_t arity);
std::string render_operad_element(const Operad& P, const OperadElement& e);

// Data of a unital associative algebra, used to build the operad whose only
// nonzero component sits in arity one.
struct AssocAlgebraData {
  BasedModule basis;
  std::vector<std::vector<Vector>> mult;  // mult[i][j] = e_i * e_j
  Vector unit;
};

// Fully tabulated operad up to max_arity.
struct OperadTableData {
  std::string name;
  std::size_t max_arity = 0;
  std::vector<std::vector<std::string>> basis;  // basis[n] = symbols of P(n)
  Vector unit;                                  // in P(1)
  // act[n][i][k] = basis i of P(n) acted on by the adjacent transposition (k k+1).
  std::vector<std::vector<std::vector<Vector>>> act;
  // compose[{m, a, slot, n, b}] = a o_slot b
  std::map<std::array<std::size_t, 5>, Vector> compose;
};

OperadPtr make_com_operad();
OperadPtr make_ass_operad();
OperadPtr make_lie_operad();
OperadPtr make_pointed_operad(AssocAlgebraData A);
OperadPtr make_table_operad(OperadTableData data);
// Tabulates components and compositions of P up to max_arity.
OperadTableData tabulate_operad(const Operad& P, std::size_t max_arity);

// Components of an operad morphism P -> Q as maps P(n) -> Q(n).
using OperadMorphism = std::function<OperadElement(std::size_t n, std::size_t i)>;

Report check_operad_axioms(const Operad& P, std::size_t arity_bound);
Report check_operad_morphism(const Operad& P, const Operad& Q, const OperadMorphism& f, std::size_t arity_bound);

}  // namespace operadiff
