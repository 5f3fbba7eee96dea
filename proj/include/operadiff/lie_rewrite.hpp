#pragma once

#include "operadiff/lincomb.hpp"

#include <memory>
#include <string>
#include <vector>

namespace operadiff {

// Bracket tree on pairwise distinct integer leaves.
struct BracketTree {
  int leaf = -1;
  std::shared_ptr<const BracketTree> left, right;
  int max_leaf = -1;

  static std::shared_ptr<const BracketTree> make_leaf(int l);
  static std::shared_ptr<const BracketTree> bracket(std::shared_ptr<const BracketTree> a,
                                                    std::shared_ptr<const BracketTree> b);
  // [s0,[s1,...,[s_{k-2}, s_{k-1}]]]
  static std::shared_ptr<const BracketTree> right_normed(const std::vector<int>& leaves);
  bool is_leaf() const { return leaf >= 0; }
  std::vector<int> leaves() const;
  std::string to_string() const;
};

using TreePtr = std::shared_ptr<const BracketTree>;

// Right-normed bracket [s0,[s1,...,[s_{k-2}, m]]] recorded by its leaf
// sequence; the last leaf is always the maximal one.
using RightNormed = std::vector<int>;

// Rewrites t into right-normed brackets ending in its maximal leaf, using
// only antisymmetry and the Jacobi identity.
LinComb<RightNormed> lie_normalize(const BracketTree& t);

}  // namespace operadiff
