#pragma once

// Combinatorial types of equidistant binary trees: unordered rooted binary
// trees with unlabelled leaves.
//
// Canonical encoding: a leaf is "x", an internal node is "(" + a + b + ")"
// with the two child encodings sorted so that a <= b. Two shapes are
// isomorphic iff their encodings are equal. Leaves are numbered 1..m from
// left to right in this encoding, internal nodes are listed in preorder.

#include "troptree/trees/equidistant_tree.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace troptree {

class TreeShape {
 public:
  // The one-leaf shape.
  TreeShape() : code_("x") {}

  // Validates and canonicalises an encoding.
  explicit TreeShape(std::string_view code) : code_(canonicalize(code)) {}

  static TreeShape leaf() { return TreeShape("x"); }
  static TreeShape join(const TreeShape& a, const TreeShape& b) {
    const auto& [lo, hi] = std::minmax(a.code_, b.code_);
    TreeShape s;
    s.code_ = "(" + lo + hi + ")";
    return s;
  }

  [[nodiscard]] const std::string& code() const { return code_; }
  [[nodiscard]] int leaf_count() const { return static_cast<int>(std::count(code_.begin(), code_.end(), 'x')); }
  [[nodiscard]] int internal_count() const { return leaf_count() - 1; }

  friend bool operator==(const TreeShape&, const TreeShape&) = default;
  friend auto operator<=>(const TreeShape& a, const TreeShape& b) { return a.code_ <=> b.code_; }

 private:
  static std::string canonicalize(std::string_view code) {
    std::size_t pos = 0;
    std::string out = parse(code, pos);
    if (pos != code.size()) throw std::invalid_argument("TreeShape: trailing characters in '" + std::string(code) + "'");
    return out;
  }
  static std::string parse(std::string_view code, std::size_t& pos) {
    if (pos >= code.size()) throw std::invalid_argument("TreeShape: unexpected end of encoding");
    if (code[pos] == 'x') {
      ++pos;
      return "x";
    }
    if (code[pos] != '(') throw std::invalid_argument("TreeShape: unexpected character in encoding");
    ++pos;
    std::string a = parse(code, pos);
    std::string b = parse(code, pos);
    if (pos >= code.size() || code[pos] != ')')
      throw std::invalid_argument("TreeShape: internal nodes must have exactly two children");
    ++pos;
    if (b < a) std::swap(a, b);
    return "(" + a + b + ")";
  }

  std::string code_;
};

// All shapes with m leaves, sorted by encoding. Counts follow the
// Wedderburn-Etherington numbers 1, 1, 1, 2, 3, 6, 11, 23, 46, 98, ...
inline std::vector<TreeShape> enumerate_shapes(int m) {
  if (m < 1) throw std::invalid_argument("enumerate_shapes: m must be at least 1");
  std::vector<std::set<TreeShape>> by_size(static_cast<std::size_t>(m) + 1);
  by_size[1].insert(TreeShape::leaf());
  for (int k = 2; k <= m; ++k)
    for (int i = 1; i <= k / 2; ++i)
      for (const auto& a : by_size[static_cast<std::size_t>(i)])
        for (const auto& b : by_size[static_cast<std::size_t>(k - i)]) by_size[static_cast<std::size_t>(k)].insert(TreeShape::join(a, b));
  const auto& s = by_size[static_cast<std::size_t>(m)];
  return {s.begin(), s.end()};
}

// Builds the equidistant tree of `shape` with the given internal-node heights
// (preorder). The root is named "r", other internal nodes "i1", "i2", ...
// unless `names` (preorder, internal nodes only) is given.
inline EquidistantTree realize_shape(const TreeShape& shape, const std::vector<Rational>& heights,
                                     const std::vector<std::string>& names = {}) {
  const int internal = shape.internal_count();
  if (internal == 0) throw TreeError("realize_shape: a single leaf is not a tree");
  if (static_cast<int>(heights.size()) != internal)
    throw TreeError("realize_shape: expected " + std::to_string(internal) + " heights, got " +
                    std::to_string(heights.size()));
  if (!names.empty() && static_cast<int>(names.size()) != internal)
    throw TreeError("realize_shape: wrong number of node names");

  WeightedTree::Builder b;
  const std::string& code = shape.code();
  std::size_t pos = 0;
  int next_leaf = 1;
  std::size_t next_internal = 0;
  // Returns (node, height).
  auto build = [&](auto&& self) -> std::pair<NodeId, Rational> {
    if (code[pos] == 'x') {
      ++pos;
      return {b.add_leaf(next_leaf++), Rational(0)};
    }
    ++pos;
    std::size_t idx = next_internal++;
    std::string name = !names.empty() ? names[idx] : (idx == 0 ? std::string("r") : "i" + std::to_string(idx));
    NodeId self_id = b.add_node(name);
    const Rational& h = heights[idx];
    for (int c = 0; c < 2; ++c) {
      auto [child, ch] = self(self);
      if (!(h > ch))
        throw TreeError("realize_shape: heights must strictly increase towards the root (node " + name + ")");
      b.add_edge(self_id, child, h - ch);
    }
    ++pos;  // ')'
    return {self_id, h};
  };
  auto [root, rh] = build(build);
  b.set_root(root);
  return EquidistantTree(std::move(b).build());
}

// Combinatorial type of a binary equidistant tree.
inline TreeShape shape_of(const EquidistantTree& t) {
  auto encode = [&](auto&& self, NodeId u) -> TreeShape {
    const auto& kids = t.children(u);
    if (kids.empty()) return TreeShape::leaf();
    if (kids.size() != 2) throw TreeError("shape_of: tree is not binary");
    return TreeShape::join(self(self, kids[0]), self(self, kids[1]));
  };
  return encode(encode, t.root());
}

// Internal-node heights in the preorder used by realize_shape, for a tree whose
// children are already in canonical order.
inline std::vector<Rational> internal_heights_preorder(const EquidistantTree& t) {
  std::vector<Rational> out;
  for (NodeId n : t.preorder())
    if (!t.tree().is_leaf(n)) out.push_back(t.height(n));
  return out;
}

}  // namespace troptree
