#pragma once

// Building trees back from metrics: the additive tree of a four-point metric
// and the equidistant tree of an ultrametric.

#include "troptree/metrics/conditions.hpp"
#include "troptree/trees/equidistant_tree.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

class FourPointViolation : public std::invalid_argument {
 public:
  explicit FourPointViolation(QuadrupleWitness w)
      : std::invalid_argument(describe(w)), witness_(std::move(w)) {}
  [[nodiscard]] const QuadrupleWitness& witness() const { return witness_; }

 private:
  static std::string describe(const QuadrupleWitness& w) {
    return "four-point condition fails at (" + std::to_string(w.indices[0]) + "," + std::to_string(w.indices[1]) +
           "," + std::to_string(w.indices[2]) + "," + std::to_string(w.indices[3]) + "): sums " + w.sums[0].str() +
           ", " + w.sums[1].str() + ", " + w.sums[2].str();
  }
  QuadrupleWitness witness_;
};

class UltrametricViolation : public std::invalid_argument {
 public:
  explicit UltrametricViolation(TripleWitness w)
      : std::invalid_argument("not an ultrametric at (" + std::to_string(w.indices[0]) + "," +
                              std::to_string(w.indices[1]) + "," + std::to_string(w.indices[2]) + ")"),
        witness_(std::move(w)) {}
  [[nodiscard]] const TripleWitness& witness() const { return witness_; }

 private:
  TripleWitness witness_;
};

namespace detail {

// Growable tree used during leaf insertion.
struct ScratchTree {
  struct Node {
    std::optional<int> leaf;
    std::map<std::size_t, Rational> adj;
  };
  std::vector<Node> nodes;
  std::vector<std::size_t> leaf_node;  // by label - 1

  std::size_t add(std::optional<int> leaf) {
    nodes.push_back({leaf, {}});
    if (leaf) {
      if (leaf_node.size() < static_cast<std::size_t>(*leaf)) leaf_node.resize(static_cast<std::size_t>(*leaf));
      leaf_node[static_cast<std::size_t>(*leaf - 1)] = nodes.size() - 1;
    }
    return nodes.size() - 1;
  }
  void link(std::size_t a, std::size_t b, const Rational& len) {
    nodes[a].adj[b] = len;
    nodes[b].adj[a] = len;
  }
  void unlink(std::size_t a, std::size_t b) {
    nodes[a].adj.erase(b);
    nodes[b].adj.erase(a);
  }
  std::vector<std::size_t> path(std::size_t from, std::size_t to) const {
    std::vector<std::size_t> parent(nodes.size(), SIZE_MAX);
    std::vector<std::size_t> stack{from};
    parent[from] = from;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      if (u == to) break;
      for (auto& [v, len] : nodes[u].adj)
        if (parent[v] == SIZE_MAX) {
          parent[v] = u;
          stack.push_back(v);
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t u = to; u != from; u = parent[u]) out.push_back(u);
    out.push_back(from);
    std::reverse(out.begin(), out.end());
    return out;
  }
  // A new internal node at the position of a leaf; the leaf hangs off it by a zero edge.
  std::size_t open_leaf(std::size_t leaf) {
    auto [nbr, len] = *nodes[leaf].adj.begin();
    Rational l = len;
    std::size_t w = add(std::nullopt);
    unlink(leaf, nbr);
    link(w, nbr, l);
    link(w, leaf, Rational(0));
    return w;
  }
};

}  // namespace detail

// The unique tree realising a four-point metric, by sequential leaf insertion:
// leaf k joins the tree on the path from leaf 1 to the leaf j maximising the
// Gromov product (j|k)_1, at distance (j|k)_1 from leaf 1.
inline WeightedTree reconstruct_tree(const DissimilarityMatrix& d) {
  const int n = d.size();
  if (n < 2) throw std::invalid_argument("reconstruct_tree: need at least two leaves");
  if (auto c = four_point_condition(d); !c) throw FourPointViolation(*c.witness);

  detail::ScratchTree st;
  std::size_t l1 = st.add(1);
  std::size_t l2 = st.add(2);
  st.link(l1, l2, d(1, 2));
  for (int k = 3; k <= n; ++k) {
    int best_j = 2;
    Rational best = (d(1, k) + d(1, 2) - d(2, k)) / Rational(2);
    for (int j = 3; j < k; ++j) {
      Rational g = (d(1, k) + d(1, j) - d(j, k)) / Rational(2);
      if (g > best) {
        best = g;
        best_j = j;
      }
    }
    const Rational pendant = d(1, k) - best;
    auto path = st.path(st.leaf_node[0], st.leaf_node[static_cast<std::size_t>(best_j - 1)]);
    std::size_t attach = SIZE_MAX;
    Rational walked;
    for (std::size_t p = 0; p + 1 < path.size() && attach == SIZE_MAX; ++p) {
      const Rational len = st.nodes[path[p]].adj.at(path[p + 1]);
      if (walked == best) {
        attach = path[p];
      } else if (walked + len > best) {
        std::size_t mid = st.add(std::nullopt);
        st.unlink(path[p], path[p + 1]);
        st.link(path[p], mid, best - walked);
        st.link(mid, path[p + 1], walked + len - best);
        attach = mid;
      }
      walked += len;
    }
    if (attach == SIZE_MAX) attach = path.back();
    if (st.nodes[attach].leaf) attach = st.open_leaf(attach);
    std::size_t leaf = st.add(k);
    st.link(attach, leaf, pendant);
  }

  WeightedTree::Builder b;
  for (auto& node : st.nodes) {
    if (node.leaf) b.add_leaf(*node.leaf);
    else b.add_node();
  }
  for (std::size_t u = 0; u < st.nodes.size(); ++u)
    for (auto& [v, len] : st.nodes[u].adj)
      if (u < v) b.add_edge(u, v, len);
  WeightedTree t = std::move(b).build();
  if (distance_matrix(t) != d) throw std::logic_error("reconstruct_tree: reconstruction does not reproduce D");
  return t;
}

// Equidistant tree realising an ultrametric on [k]: clusters are merged at
// height D'(i,j)/2, several at once when merge heights tie.
inline EquidistantTree equidistant_realization(const DissimilarityMatrix& d) {
  const int k = d.size();
  if (k < 2) throw std::invalid_argument("equidistant_realization: need at least two leaves");
  if (auto c = is_ultrametric(d); !c) throw UltrametricViolation(*c.witness);
  std::set<Rational> levels;
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j) {
      if (!(d(i, j) > Rational(0)))
        throw std::invalid_argument("equidistant_realization: leaves " + std::to_string(i) + " and " +
                                    std::to_string(j) + " are at distance " + d(i, j).str() +
                                    " (must be positive)");
      levels.insert(d(i, j));
    }

  WeightedTree::Builder b;
  std::vector<NodeId> top(static_cast<std::size_t>(k));
  std::vector<Rational> top_height(static_cast<std::size_t>(k));
  std::vector<int> comp(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    top[static_cast<std::size_t>(i)] = b.add_leaf(i + 1);
    comp[static_cast<std::size_t>(i)] = i;
  }
  // comp[i] = representative leaf index of i's cluster; top[rep] = its node.
  std::map<NodeId, int> min_label;
  NodeId last = top[0];
  for (const Rational& level : levels) {
    // Group current clusters joined at this exact level.
    std::vector<int> parent(static_cast<std::size_t>(k));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      return x;
    };
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j)
        if (d(i, j) == level) {
          int a = find(comp[static_cast<std::size_t>(i - 1)]);
          int c = find(comp[static_cast<std::size_t>(j - 1)]);
          if (a != c) parent[static_cast<std::size_t>(std::max(a, c))] = std::min(a, c);
        }
    std::map<int, std::vector<int>> groups;  // new rep -> old reps
    std::set<int> reps(comp.begin(), comp.end());
    for (int r : reps) groups[find(r)].push_back(r);
    const Rational h = level / Rational(2);
    for (auto& [rep, members] : groups) {
      if (members.size() < 2) continue;
      NodeId node = b.add_node();
      for (int old : members)
        b.add_edge(node, top[static_cast<std::size_t>(old)], h - top_height[static_cast<std::size_t>(old)]);
      top[static_cast<std::size_t>(rep)] = node;
      top_height[static_cast<std::size_t>(rep)] = h;
      last = node;
      for (int& c : comp)
        if (std::find(members.begin(), members.end(), c) != members.end()) c = rep;
    }
  }
  b.set_root(last);
  return EquidistantTree(std::move(b).build());
}

}  // namespace troptree
