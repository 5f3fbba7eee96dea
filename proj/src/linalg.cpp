#include "operadiff/linalg.hpp"

#include <sstream>

namespace operadiff {

BasedModule::BasedModule(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw InputError("duplicate basis symbol: " + names_[i]);
  }
}

std::optional<std::size_t> BasedModule::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t BasedModule::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw InputError("unknown basis symbol: " + name);
  return *i;
}

BasedModule BasedModule::power(const BasedModule& m, const std::vector<std::string>& prefixes) {
  std::vector<std::string> names;
  for (const auto& p : prefixes)
    for (const auto& n : m.names()) names.push_back(p + n);
  return BasedModule(std::move(names));
}

BasedModule BasedModule::coordinates(std::size_t n, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return BasedModule(std::move(names));
}

std::string render_vector(const Vector& v, const BasedModule& m) {
  if (v.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    Scalar a = c;
    bool neg = a < Scalar(0);
    if (neg) a = -a;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (!a.is_one()) os << a << "*";
    os << m.name(i);
    first = false;
  }
  return os.str();
}

Vector unit_vector(std::size_t i) { return Vector(i); }

LinearMap::LinearMap(std::size_t dom, std::size_t cod, std::vector<Vector> cols)
    : dom_(dom), cod_(cod), cols_(std::move(cols)) {
  if (cols_.size() != dom_) throw InputError("linear map: column count mismatch");
  for (const auto& c : cols_)
    for (const auto& [i, v] : c)
      if (i >= cod_) throw InputError("linear map: image outside codomain");
}

LinearMap LinearMap::identity(std::size_t n) {
  LinearMap f(n, n);
  for (std::size_t i = 0; i < n; ++i) f.cols_[i] = Vector(i);
  return f;
}

void LinearMap::set_column(std::size_t j, Vector v) {
  for (const auto& [i, c] : v)
    if (i >= cod_) throw InputError("linear map: image outside codomain");
  cols_.at(j) = std::move(v);
}

Vector LinearMap::apply(const Vector& v) const {
  Vector out;
  for (const auto& [j, c] : v) {
    if (j >= dom_) throw InputError("linear map: argument outside domain");
    out.add(cols_[j], c);
  }
  return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
  if (inner.cod_ != dom_) throw InputError("linear map: composition dimension mismatch");
  LinearMap out(inner.dom_, cod_);
  for (std::size_t j = 0; j < inner.dom_; ++j) out.cols_[j] = apply(inner.cols_[j]);
  return out;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
  if (o.dom_ != dom_ || o.cod_ != cod_) throw InputError("linear map: sum dimension mismatch");
  LinearMap out = *this;
  for (std::size_t j = 0; j < dom_; ++j) out.cols_[j] += o.cols_[j];
  return out;
}

LinearMap LinearMap::operator-(const LinearMap& o) const { return *this + o.scaled(Scalar(-1)); }

LinearMap LinearMap::scaled(const Scalar& c) const {
  LinearMap out = *this;
  for (auto& col : out.cols_) col *= c;
  return out;
}

LinearMap LinearMap::blocks(std::size_t n, const std::vector<std::vector<Scalar>>& b) {
  std::size_t out_blocks = b.size();
  std::size_t in_blocks = out_blocks ? b[0].size() : 0;
  LinearMap f(n * in_blocks, n * out_blocks);
  for (std::size_t i = 0; i < out_blocks; ++i) {
    if (b[i].size() != in_blocks) throw InputError("block map: ragged rows");
    for (std::size_t j = 0; j < in_blocks; ++j)
      for (std::size_t k = 0; k < n; ++k) f.cols_[j * n + k].add(i * n + k, b[i][j]);
  }
  return f;
}

LinearMap LinearMap::power(std::size_t copies) const {
  LinearMap f(dom_ * copies, cod_ * copies);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t j = 0; j < dom_; ++j)
      for (const auto& [i, v] : cols_[j]) f.cols_[c * dom_ + j].add(c * cod_ + i, v);
  return f;
}

Vector Echelon::reduce(Vector v) const {
  // Rows are fully reduced, so one sweep in increasing pivot order suffices.
  for (const auto& [pivot, row] : rows_) {
    Scalar c = v.coeff(pivot);
    if (!c.is_zero()) v.add(row, -c);
  }
  return v;
}

bool Echelon::insert(Vector v) {
  v = reduce(std::move(v));
  if (v.is_zero()) return false;
  auto lead = v.begin()->first;
  Scalar inv = v.begin()->second.inverse();
  v *= inv;
  for (auto& [pivot, row] : rows_) {
    Scalar c = row.coeff(lead);
    if (!c.is_zero()) row.add(v, -c);
  }
  rows_.emplace(lead, std::move(v));
  return true;
}

std::size_t rank(const LinearMap& f) {
  Echelon e;
  for (std::size_t j = 0; j < f.domain_dim(); ++j) e.insert(f.column(j));
  return e.rank();
}

std::vector<Vector> solve_kernel(const LinearMap& f) {
  // Row-reduce the matrix itself: rows indexed by codomain, entries by domain.
  std::vector<Vector> rows(f.codomain_dim());
  for (std::size_t j = 0; j < f.domain_dim(); ++j)
    for (const auto& [i, c] : f.column(j)) rows[i].add(j, c);
  Echelon e;
  for (auto& r : rows) e.insert(std::move(r));
  Echelon kernel;
  for (std::size_t free = 0; free < f.domain_dim(); ++free) {
    if (e.is_pivot(free)) continue;
    Vector k(free);
    for (const auto& [pivot, row] : e.rows()) {
      Scalar c = row.coeff(free);
      if (!c.is_zero()) k.add(pivot, -c);
    }
    kernel.insert(std::move(k));
  }
  std::vector<Vector> basis;
  for (const auto& [pivot, row] : kernel.rows()) basis.push_back(row);
  return basis;
}

Quotient quotient_basis(std::size_t ambient_dim, const std::vector<Vector>& relations) {
  Echelon e;
  for (const auto& r : relations) e.insert(r);
  return quotient_basis(ambient_dim, std::move(e));
}

Quotient quotient_basis(std::size_t ambient_dim, Echelon relations) {
  Quotient q;
  q.ambient_dim = ambient_dim;
  std::vector<std::size_t> position(ambient_dim, 0);
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    if (relations.is_pivot(j)) continue;
    position[j] = q.representatives.size();
    q.representatives.push_back(j);
  }
  q.projection = LinearMap(ambient_dim, q.representatives.size());
  for (std::size_t j = 0; j < ambient_dim; ++j) {
    Vector img;
    if (!relations.is_pivot(j)) {
      img.add(position[j], Scalar(1));
    } else {
      for (const auto& [col, c] : relations.rows().at(j))
        if (col != j) img.add(position[col], -c);
    }
    q.projection.set_column(j, std::move(img));
  }
  q.relations = std::move(relations);
  return q;
}

}  // namespace operadiff
