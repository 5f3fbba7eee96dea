#pragma once

#include "operadiff/scalar.hpp"

#include <map>
#include <utility>

namespace operadiff {

// Finite formal linear combination over an ordered key set. Zero
// coefficients are never stored, so equality is structural.
template <class K>
class LinComb {
 public:
  using Map = std::map<K, Scalar>;
  using const_iterator = typename Map::const_iterator;

  LinComb() = default;
  LinComb(const K& k, Scalar c = Scalar(1)) { add(k, std::move(c)); }

  void add(const K& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void add(const LinComb& o, const Scalar& c = Scalar(1)) {
    if (c.is_zero()) return;
    for (const auto& [k, v] : o.terms_) add(k, v * c);
  }

  Scalar coeff(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, Scalar(-1));
    return *this;
  }
  LinComb& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const Scalar& c, LinComb a) { return a *= c; }
  LinComb operator-() const { return Scalar(-1) * *this; }
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }
  friend bool operator<(const LinComb& a, const LinComb& b) { return a.terms_ < b.terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  template <class F>
  auto map_keys(F&& f) const {
    LinComb<std::decay_t<decltype(f(std::declval<const K&>()))>> out;
    for (const auto& [k, v] : terms_) out.add(f(k), v);
    return out;
  }

 private:
  Map terms_;
};

}  // namespace operadiff
