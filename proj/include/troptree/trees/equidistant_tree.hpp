#pragma once

// Rooted trees whose leaves all sit at the same distance from the root. Every
// node has a height (its distance to any leaf below it); every edge inherits
// the height of its upper endpoint.

#include "troptree/trees/weighted_tree.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

class EquidistantTree {
 public:
  explicit EquidistantTree(WeightedTree rooted) : tree_(std::move(rooted)) {
    if (!tree_.root()) throw TreeError("equidistant tree needs a root");
    const std::size_t nn = tree_.node_count();
    parent_.assign(nn, std::nullopt);
    parent_edge_.assign(nn, SIZE_MAX);
    children_.assign(nn, {});
    height_.assign(nn, Rational(0));
    const NodeId root = *tree_.root();

    std::vector<NodeId> stack{root};
    std::vector<bool> seen(nn, false);
    seen[root] = true;
    while (!stack.empty()) {
      NodeId u = stack.back();
      stack.pop_back();
      preorder_.push_back(u);
      // Children in edge-insertion order; reversed pushes keep preorder left-to-right.
      std::vector<NodeId> kids;
      for (EdgeId e : tree_.node(u).edges) {
        NodeId v = tree_.edge(e).other(u);
        if (seen[v]) continue;
        seen[v] = true;
        parent_[v] = u;
        parent_edge_[v] = e;
        kids.push_back(v);
      }
      children_[u] = kids;
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }

    std::vector<Rational> depth(nn);
    for (NodeId u : preorder_)
      if (parent_[u]) depth[u] = depth[*parent_[u]] + tree_.edge(parent_edge_[u]).length;
    const Rational root_height = depth[tree_.leaf_node(1)];
    for (int l = 1; l <= tree_.leaf_count(); ++l)
      if (depth[tree_.leaf_node(l)] != root_height)
        throw TreeError("not equidistant: leaf " + std::to_string(l) + " at distance " +
                        depth[tree_.leaf_node(l)].str() + " from the root, leaf 1 at " + root_height.str());
    for (NodeId u = 0; u < nn; ++u) height_[u] = root_height - depth[u];
    for (NodeId u = 0; u < nn; ++u) {
      if (parent_[u] && !(height_[*parent_[u]] > height_[u]))
        throw TreeError("heights must strictly increase towards the root (edge above " + tree_.display_name(u) +
                        " has length zero)");
    }
  }

  [[nodiscard]] const WeightedTree& tree() const { return tree_; }
  [[nodiscard]] NodeId root() const { return *tree_.root(); }
  [[nodiscard]] int leaf_count() const { return tree_.leaf_count(); }
  [[nodiscard]] const Rational& height(NodeId n) const { return height_.at(n); }
  [[nodiscard]] const Rational& root_height() const { return height_.at(root()); }
  [[nodiscard]] std::optional<NodeId> parent(NodeId n) const { return parent_.at(n); }
  [[nodiscard]] EdgeId parent_edge(NodeId n) const {
    if (!parent_.at(n)) throw TreeError("root has no parent edge");
    return parent_edge_[n];
  }
  [[nodiscard]] const std::vector<NodeId>& children(NodeId n) const { return children_.at(n); }
  [[nodiscard]] const std::vector<NodeId>& preorder() const { return preorder_; }

  // Non-root nodes in preorder; each one stands for the edge above it.
  [[nodiscard]] std::vector<NodeId> edges_preorder() const {
    std::vector<NodeId> out;
    for (NodeId n : preorder_)
      if (parent_[n]) out.push_back(n);
    return out;
  }

  // Height of the edge above `child` (the height of its upper endpoint).
  [[nodiscard]] const Rational& edge_height(NodeId child) const { return height_.at(*parent_.at(child)); }

  [[nodiscard]] std::string edge_name(NodeId child) const {
    return "(" + tree_.display_name(*parent_.at(child)) + "," + tree_.display_name(child) + ")";
  }

  // Nodes on the path from the leaf up to (excluding) the root; each
  // represents the edge above it.
  [[nodiscard]] std::vector<NodeId> path_to_root(int leaf) const {
    std::vector<NodeId> out;
    for (NodeId u = tree_.leaf_node(leaf); parent_[u]; u = *parent_[u]) out.push_back(u);
    return out;
  }

  [[nodiscard]] NodeId lca_nodes(NodeId a, NodeId b) const {
    std::vector<bool> mark(tree_.node_count(), false);
    for (std::optional<NodeId> u = a; u; u = parent_[*u]) mark[*u] = true;
    for (std::optional<NodeId> u = b; u; u = parent_[*u])
      if (mark[*u]) return *u;
    return root();
  }
  [[nodiscard]] NodeId lca(int i, int j) const { return lca_nodes(tree_.leaf_node(i), tree_.leaf_node(j)); }

  [[nodiscard]] NodeId lca(const std::vector<int>& leaves) const {
    if (leaves.empty()) throw TreeError("lca of an empty set");
    NodeId cur = tree_.leaf_node(leaves.front());
    for (int l : leaves) cur = lca_nodes(cur, tree_.leaf_node(l));
    return cur;
  }

 private:
  WeightedTree tree_;
  std::vector<std::optional<NodeId>> parent_;
  std::vector<EdgeId> parent_edge_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<NodeId> preorder_;
  std::vector<Rational> height_;
};

inline bool is_equidistant(const WeightedTree& t) {
  if (!t.root()) return false;
  try {
    EquidistantTree e(t);
    return true;
  } catch (const TreeError&) {
    return false;
  }
}

// Adds leaf n+1 joined to the root by an edge of length `anchor_length`.
// The result is an unrooted tree in which leaf n+1 is at distance
// root_height + anchor_length from every old leaf. An anchor edge exactly as
// long as the root height makes leaf n+1 one more child of the root.
inline WeightedTree attach_anchor(const EquidistantTree& t, const Rational& anchor_length) {
  if (anchor_length < t.root_height())
    throw TreeError("anchor edge length " + anchor_length.str() + " is below the root height " +
                    t.root_height().str());
  const WeightedTree& src = t.tree();
  WeightedTree::Builder b;
  for (NodeId id = 0; id < src.node_count(); ++id) {
    const auto& n = src.node(id);
    if (n.leaf) b.add_leaf(*n.leaf, n.name);
    else b.add_node(n.name);
  }
  for (const auto& e : src.edges()) b.add_edge(e.a, e.b, e.length);
  NodeId anchor = b.add_leaf(src.leaf_count() + 1);
  b.add_edge(t.root(), anchor, anchor_length);
  return std::move(b).build();
}

// The anchored tree viewed as an equidistant (n+1)-tree: the new root sits on
// the anchor edge at distance (root_height + anchor_length)/2 from the anchor.
inline EquidistantTree anchor_as_equidistant(const EquidistantTree& t, const Rational& anchor_length) {
  if (anchor_length < t.root_height()) throw TreeError("anchor edge length is below the root height");
  if (anchor_length == t.root_height()) {
    WeightedTree a = attach_anchor(t, anchor_length);
    return EquidistantTree(a.with_root(t.root()));
  }
  const Rational top = (t.root_height() + anchor_length) / Rational(2);
  const WeightedTree& src = t.tree();
  WeightedTree::Builder b;
  for (NodeId id = 0; id < src.node_count(); ++id) {
    const auto& n = src.node(id);
    if (n.leaf) b.add_leaf(*n.leaf, n.name);
    else b.add_node(n.name);
  }
  for (const auto& e : src.edges()) b.add_edge(e.a, e.b, e.length);
  NodeId new_root = b.add_node("top");
  NodeId anchor = b.add_leaf(src.leaf_count() + 1);
  b.add_edge(new_root, t.root(), top - t.root_height());
  b.add_edge(new_root, anchor, top);
  b.set_root(new_root);
  return EquidistantTree(std::move(b).build());
}

}  // namespace troptree
