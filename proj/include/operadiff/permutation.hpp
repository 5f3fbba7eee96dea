#pragma once

#include "operadiff/scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace operadiff {

// Bijection of {0,...,n-1}; printed 1-based. compose(p, q) is p o q, i.e.
// q is applied first.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::size_t> images);

  static Permutation identity(std::size_t n);
  static Permutation transposition(std::size_t n, std::size_t a, std::size_t b);
  // One-based cycle, e.g. {1,2,3} for (1 2 3).
  static Permutation cycle(std::size_t n, const std::vector<std::size_t>& one_based);
  // Sorting permutation: act_word(result, w) is w stably sorted.
  template <class T>
  static Permutation sorting(const std::vector<T>& w);
  static std::vector<Permutation> all(std::size_t n);

  std::size_t size() const { return img_.size(); }
  std::size_t operator()(std::size_t i) const { return img_[i]; }
  const std::vector<std::size_t>& images() const { return img_; }
  Permutation inverse() const;
  bool is_identity() const;
  int sign() const;
  std::string to_string() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
  friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

 private:
  std::vector<std::size_t> img_;
};

Permutation compose(const Permutation& p, const Permutation& q);

// The letter at position i moves to position p(i). This is a left action:
// act_word(compose(p, q), w) == act_word(p, act_word(q, w)).
// The cycle (1 2 3) sends (x, y, z) to (z, x, y).
template <class T>
std::vector<T> act_word(const Permutation& p, const std::vector<T>& w) {
  if (p.size() != w.size()) throw InputError("permutation and word lengths differ");
  std::vector<T> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[p(i)] = w[i];
  return out;
}

// Blow up slot i of p into a block of sizes[i] consecutive positions; blocks
// are moved as units, preserving their internal order.
Permutation block_permutation(const Permutation& p, const std::vector<std::size_t>& sizes);

std::size_t factorial(std::size_t n);
// Lexicographic rank among arrangements of 1..n, and its inverse.
std::size_t arrangement_rank(const std::vector<int>& seq);
std::vector<int> arrangement_unrank(std::size_t n, std::size_t rank);

template <class T>
Permutation Permutation::sorting(const std::vector<T>& w) {
  std::vector<std::size_t> order(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });
  // order[j] is the source position of the j-th smallest letter.
  std::vector<std::size_t> img(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) img[order[j]] = j;
  return Permutation(std::move(img));
}

}  // namespace operadiff

