#pragma once

#include "operadiff/lincomb.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace operadiff {

using Vector = LinComb<std::size_t>;

// Finite-dimensional module with named, ordered basis.
class BasedModule {
 public:
  BasedModule() = default;
  explicit BasedModule(std::vector<std::string> names);

  std::size_t dim() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index(const std::string& name) const;

  // Product module M^k. Block b holds copies of the basis named by prefixes[b].
  static BasedModule power(const BasedModule& m, const std::vector<std::string>& prefixes);
  // Rationals^n with basis x1..xn.
  static BasedModule coordinates(std::size_t n, const std::string& stem = "x");

  friend bool operator==(const BasedModule& a, const BasedModule& b) { return a.names_ == b.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

std::string render_vector(const Vector& v, const BasedModule& m);
Vector unit_vector(std::size_t i);

// Linear map given by the images of domain basis vectors.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(std::size_t dom, std::size_t cod) : dom_(dom), cod_(cod), cols_(dom) {}
  LinearMap(std::size_t dom, std::size_t cod, std::vector<Vector> cols);

  static LinearMap identity(std::size_t n);
  static LinearMap zero(std::size_t dom, std::size_t cod) { return LinearMap(dom, cod); }

  std::size_t domain_dim() const { return dom_; }
  std::size_t codomain_dim() const { return cod_; }
  const Vector& column(std::size_t j) const { return cols_.at(j); }
  void set_column(std::size_t j, Vector v);
  Scalar entry(std::size_t i, std::size_t j) const { return cols_.at(j).coeff(i); }

  Vector apply(const Vector& v) const;
  LinearMap compose(const LinearMap& inner) const;  // this o inner
  LinearMap operator+(const LinearMap& o) const;
  LinearMap operator-(const LinearMap& o) const;
  LinearMap scaled(const Scalar& c) const;
  friend bool operator==(const LinearMap& a, const LinearMap& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.cols_ == b.cols_;
  }

  // Block matrix between k-fold powers of a dim-n module: output block i is
  // sum_j blocks[i][j] * input block j.
  static LinearMap blocks(std::size_t n, const std::vector<std::vector<Scalar>>& blocks);
  // f x f x ... (copies times) on the product module.
  LinearMap power(std::size_t copies) const;

 private:
  std::size_t dom_ = 0, cod_ = 0;
  std::vector<Vector> cols_;
};

// Row-reduced echelon basis of a subspace, grown incrementally. Rows are
// kept fully reduced so reduce() returns a canonical remainder.
class Echelon {
 public:
  // Returns true when v was independent of the current rows.
  bool insert(Vector v);
  Vector reduce(Vector v) const;
  bool contains(const Vector& v) const { return reduce(v).is_zero(); }
  std::size_t rank() const { return rows_.size(); }
  bool is_pivot(std::size_t col) const { return rows_.count(col) != 0; }
  const std::map<std::size_t, Vector>& rows() const { return rows_; }

 private:
  std::map<std::size_t, Vector> rows_;  // pivot column -> row with leading 1
};

// Echelonized basis of ker(f).
std::vector<Vector> solve_kernel(const LinearMap& f);
std::size_t rank(const LinearMap& f);

struct Quotient {
  std::size_t ambient_dim = 0;
  std::vector<std::size_t> representatives;  // ambient basis indices spanning a complement
  LinearMap projection;                       // ambient -> quotient coordinates
  Echelon relations;
  std::size_t dim() const { return representatives.size(); }
};

Quotient quotient_basis(std::size_t ambient_dim, const std::vector<Vector>& relations);
Quotient quotient_basis(std::size_t ambient_dim, Echelon relations);

}  // namespace operadiff
