#pragma once

// Leaf-labelled trees with exact nonnegative edge lengths. Leaves carry the
// labels 1..n; a tree may optionally designate a root node.

#include "troptree/exact/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace troptree {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct TreeNode {
  std::optional<int> leaf;  // label in 1..n for leaves
  std::string name;
  std::vector<EdgeId> edges;
};

struct TreeEdge {
  NodeId a;
  NodeId b;
  Rational length;
  [[nodiscard]] NodeId other(NodeId n) const { return n == a ? b : a; }
};

class TreeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class WeightedTree {
 public:
  class Builder;

  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] int leaf_count() const { return static_cast<int>(leaf_nodes_.size()); }
  [[nodiscard]] const TreeNode& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] const TreeEdge& edge(EdgeId id) const { return edges_.at(id); }
  [[nodiscard]] const std::vector<TreeNode>& nodes() const { return nodes_; }
  [[nodiscard]] const std::vector<TreeEdge>& edges() const { return edges_; }
  [[nodiscard]] std::optional<NodeId> root() const { return root_; }
  [[nodiscard]] bool is_rooted() const { return root_.has_value(); }
  [[nodiscard]] bool is_leaf(NodeId id) const { return nodes_.at(id).leaf.has_value(); }
  [[nodiscard]] std::size_t degree(NodeId id) const { return nodes_.at(id).edges.size(); }

  [[nodiscard]] NodeId leaf_node(int label) const {
    if (label < 1 || label > leaf_count())
      throw TreeError("unknown leaf label " + std::to_string(label));
    return leaf_nodes_[static_cast<std::size_t>(label - 1)];
  }

  // Display name: explicit name, else the leaf label, else "n<id>".
  [[nodiscard]] std::string display_name(NodeId id) const {
    const auto& n = nodes_.at(id);
    if (!n.name.empty()) return n.name;
    if (n.leaf) return std::to_string(*n.leaf);
    return "n" + std::to_string(id);
  }

  [[nodiscard]] Rational total_length() const {
    Rational sum;
    for (auto& e : edges_) sum += e.length;
    return sum;
  }

  // Same tree with `root` designated (which must be an internal node).
  [[nodiscard]] WeightedTree with_root(std::optional<NodeId> root) const {
    WeightedTree t = *this;
    t.root_ = root;
    t.validate();
    return t;
  }

 private:
  WeightedTree() = default;
  void validate();

  std::vector<TreeNode> nodes_;
  std::vector<TreeEdge> edges_;
  std::vector<NodeId> leaf_nodes_;
  std::optional<NodeId> root_;
};

class WeightedTree::Builder {
 public:
  NodeId add_node(std::string name = {}) {
    tree_.nodes_.push_back(TreeNode{std::nullopt, std::move(name), {}});
    return tree_.nodes_.size() - 1;
  }
  NodeId add_leaf(int label, std::string name = {}) {
    NodeId id = add_node(std::move(name));
    tree_.nodes_[id].leaf = label;
    return id;
  }
  EdgeId add_edge(NodeId a, NodeId b, Rational length) {
    if (a >= tree_.nodes_.size() || b >= tree_.nodes_.size() || a == b)
      throw TreeError("add_edge: invalid endpoints");
    tree_.edges_.push_back(TreeEdge{a, b, std::move(length)});
    EdgeId e = tree_.edges_.size() - 1;
    tree_.nodes_[a].edges.push_back(e);
    tree_.nodes_[b].edges.push_back(e);
    return e;
  }
  void set_root(NodeId r) { tree_.root_ = r; }
  [[nodiscard]] std::size_t node_count() const { return tree_.nodes_.size(); }

  WeightedTree build() && {
    tree_.validate();
    return std::move(tree_);
  }

 private:
  WeightedTree tree_;
};

inline void WeightedTree::validate() {
  const std::size_t nn = nodes_.size();
  if (nn < 2) throw TreeError("tree needs at least two nodes");
  if (edges_.size() != nn - 1) throw TreeError("tree must have exactly nodes-1 edges");
  for (auto& e : edges_)
    if (e.length.sign() < 0) throw TreeError("negative edge length " + e.length.str());

  std::vector<bool> seen(nn, false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e : nodes_[u].edges) {
      NodeId v = edges_[e].other(u);
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  if (reached != nn) throw TreeError("tree is not connected");

  std::map<int, NodeId> labels;
  for (NodeId id = 0; id < nn; ++id) {
    const auto& n = nodes_[id];
    if (n.leaf) {
      if (n.edges.size() != 1) throw TreeError("leaf " + std::to_string(*n.leaf) + " must have degree 1");
      if (!labels.emplace(*n.leaf, id).second) throw TreeError("duplicate leaf label " + std::to_string(*n.leaf));
    } else if (root_ && *root_ == id) {
      if (n.edges.size() < 2) throw TreeError("root must have degree at least 2");
    } else if (n.edges.size() < 3) {
      throw TreeError("internal node " + display_name(id) + " has degree " + std::to_string(n.edges.size()) +
                      " (needs at least 3)");
    }
  }
  if (root_ && (*root_ >= nn || nodes_[*root_].leaf)) throw TreeError("root must be an internal node");
  if (labels.size() < 2) throw TreeError("tree needs at least two leaves");
  int expect = 1;
  leaf_nodes_.clear();
  for (auto& [label, id] : labels) {
    if (label != expect) throw TreeError("leaf labels must be exactly 1..n (missing " + std::to_string(expect) + ")");
    leaf_nodes_.push_back(id);
    ++expect;
  }
}

// Distances from `source` to every node.
inline std::vector<Rational> node_distances(const WeightedTree& t, NodeId source) {
  std::vector<Rational> dist(t.node_count());
  std::vector<bool> seen(t.node_count(), false);
  std::vector<NodeId> stack{source};
  seen[source] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e : t.node(u).edges) {
      NodeId v = t.edge(e).other(u);
      if (seen[v]) continue;
      seen[v] = true;
      dist[v] = dist[u] + t.edge(e).length;
      stack.push_back(v);
    }
  }
  return dist;
}

inline Rational leaf_distance(const WeightedTree& t, int i, int j) {
  NodeId a = t.leaf_node(i);
  NodeId b = t.leaf_node(j);
  if (a == b) return Rational(0);
  return node_distances(t, a)[b];
}

// n x n grid of pairwise leaf distances, indexed by label - 1.
inline std::vector<std::vector<Rational>> leaf_distances(const WeightedTree& t) {
  const int n = t.leaf_count();
  std::vector<std::vector<Rational>> d(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int i = 1; i <= n; ++i) {
    auto dist = node_distances(t, t.leaf_node(i));
    for (int j = 1; j <= n; ++j)
      d[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = dist[t.leaf_node(j)];
  }
  return d;
}

// Weight of the smallest subtree containing the given nodes: an edge counts
// iff both sides of it contain a terminal.
inline Rational steiner_weight_nodes(const WeightedTree& t, const std::vector<NodeId>& terminals) {
  std::set<NodeId> term(terminals.begin(), terminals.end());
  if (term.size() < 2) return Rational(0);
  const std::size_t total = term.size();
  // Iterative DFS from an arbitrary node; count terminals per subtree.
  std::vector<std::size_t> below(t.node_count(), 0);
  std::vector<std::pair<NodeId, EdgeId>> parent(t.node_count(), {SIZE_MAX, SIZE_MAX});
  std::vector<NodeId> order;
  std::vector<NodeId> stack{0};
  std::vector<bool> seen(t.node_count(), false);
  seen[0] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    order.push_back(u);
    for (EdgeId e : t.node(u).edges) {
      NodeId v = t.edge(e).other(u);
      if (seen[v]) continue;
      seen[v] = true;
      parent[v] = {u, e};
      stack.push_back(v);
    }
  }
  Rational weight;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId u = *it;
    if (term.count(u)) ++below[u];
    if (parent[u].first == SIZE_MAX) continue;
    if (below[u] > 0 && below[u] < total) weight += t.edge(parent[u].second).length;
    below[parent[u].first] += below[u];
  }
  return weight;
}

inline Rational steiner_weight(const WeightedTree& t, const std::vector<int>& leaves) {
  std::set<int> unique(leaves.begin(), leaves.end());
  if (unique.size() < 2) throw TreeError("steiner_weight needs at least two distinct leaves");
  std::vector<NodeId> nodes;
  for (int l : unique) nodes.push_back(t.leaf_node(l));
  return steiner_weight_nodes(t, nodes);
}

inline Rational total_length(const WeightedTree& t) { return t.total_length(); }

// Non-fatal findings: zero-length edges, which make a tree degenerate (a
// pendant edge of length zero puts a leaf on top of an internal node).
struct TreeDiagnostics {
  std::vector<EdgeId> zero_pendant_edges;
  std::vector<EdgeId> zero_internal_edges;
  [[nodiscard]] bool clean() const { return zero_pendant_edges.empty() && zero_internal_edges.empty(); }
  [[nodiscard]] std::vector<std::string> messages(const WeightedTree& t) const {
    std::vector<std::string> out;
    auto describe = [&](EdgeId e) {
      return "(" + t.display_name(t.edge(e).a) + "," + t.display_name(t.edge(e).b) + ")";
    };
    for (EdgeId e : zero_pendant_edges) out.push_back("zero-length pendant edge " + describe(e));
    for (EdgeId e : zero_internal_edges) out.push_back("zero-length internal edge " + describe(e));
    return out;
  }
};

inline TreeDiagnostics diagnose(const WeightedTree& t) {
  TreeDiagnostics d;
  for (EdgeId e = 0; e < t.edge_count(); ++e) {
    const auto& edge = t.edge(e);
    if (!edge.length.is_zero()) continue;
    if (t.is_leaf(edge.a) || t.is_leaf(edge.b)) d.zero_pendant_edges.push_back(e);
    else d.zero_internal_edges.push_back(e);
  }
  return d;
}

}  // namespace troptree
