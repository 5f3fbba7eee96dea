#include "operadiff/lie_rewrite.hpp"

#include <algorithm>
#include <functional>

namespace operadiff {

TreePtr BracketTree::make_leaf(int l) {
  auto t = std::make_shared<BracketTree>();
  t->leaf = l;
  t->max_leaf = l;
  return t;
}

TreePtr BracketTree::bracket(TreePtr a, TreePtr b) {
  auto t = std::make_shared<BracketTree>();
  t->max_leaf = std::max(a->max_leaf, b->max_leaf);
  t->left = std::move(a);
  t->right = std::move(b);
  return t;
}

TreePtr BracketTree::right_normed(const std::vector<int>& leaves) {
  if (leaves.empty()) throw InputError("empty bracket");
  TreePtr t = make_leaf(leaves.back());
  for (auto it = leaves.rbegin() + 1; it != leaves.rend(); ++it) t = bracket(make_leaf(*it), t);
  return t;
}

std::vector<int> BracketTree::leaves() const {
  if (is_leaf()) return {leaf};
  auto a = left->leaves();
  auto b = right->leaves();
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string BracketTree::to_string() const {
  if (is_leaf()) return "x" + std::to_string(leaf);
  return "[" + left->to_string() + "," + right->to_string() + "]";
}

namespace {

// [a, r] for a tree a not containing the pivot of the right-normed r.
LinComb<RightNormed> bracket_into(const BracketTree& a, const RightNormed& r) {
  LinComb<RightNormed> out;
  if (a.is_leaf()) {
    RightNormed s;
    s.reserve(r.size() + 1);
    s.push_back(a.leaf);
    s.insert(s.end(), r.begin(), r.end());
    out.add(s, Scalar(1));
    return out;
  }
  // [[a1,a2],r] = [a1,[a2,r]] - [a2,[a1,r]]
  for (const auto& [s, c] : bracket_into(*a.right, r)) out.add(bracket_into(*a.left, s), c);
  for (const auto& [s, c] : bracket_into(*a.left, r)) out.add(bracket_into(*a.right, s), -c);
  return out;
}

bool contains_leaf(const BracketTree& t, int l) {
  if (t.is_leaf()) return t.leaf == l;
  return contains_leaf(*t.left, l) || contains_leaf(*t.right, l);
}

}  // namespace

LinComb<RightNormed> lie_normalize(const BracketTree& t) {
  LinComb<RightNormed> out;
  if (t.is_leaf()) {
    out.add(RightNormed{t.leaf}, Scalar(1));
    return out;
  }
  const BracketTree* a = t.left.get();
  const BracketTree* b = t.right.get();
  Scalar sign(1);
  if (contains_leaf(*a, t.max_leaf)) {
    std::swap(a, b);
    sign = Scalar(-1);
  }
  for (const auto& [r, c] : lie_normalize(*b)) out.add(bracket_into(*a, r), c * sign);
  return out;
}

}  // namespace operadiff
