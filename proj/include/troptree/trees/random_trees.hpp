#pragma once

// Seeded generators for test instances. The same seed always yields the
// same tree; std::mt19937_64 output is fixed by the standard, and the
// draws below avoid the implementation-defined standard distributions.

#include "troptree/trees/shape.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace troptree {

namespace detail {

inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw uniform and portable.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do x = rng(); while (x >= limit);
  return x % bound;
}

}  // namespace detail

inline std::vector<Rational> default_length_universe() {
  std::vector<Rational> u;
  for (int k = 1; k <= 9; ++k) u.emplace_back(k);
  u.push_back(Rational(1) / Rational(2));
  u.push_back(Rational(3) / Rational(2));
  u.push_back(Rational(5) / Rational(3));
  u.push_back(Rational(7) / Rational(4));
  return u;
}

// Random unrooted binary n-tree: start from a 3-star and repeatedly split a
// uniformly chosen edge with a new leaf. Lengths are drawn from `universe`.
inline WeightedTree random_tree(int n, std::uint64_t seed,
                                const std::vector<Rational>& universe = default_length_universe()) {
  if (n < 3) throw std::invalid_argument("random_tree: n must be at least 3");
  if (universe.empty()) throw std::invalid_argument("random_tree: empty length universe");
  for (auto& q : universe)
    if (q.sign() <= 0) throw std::invalid_argument("random_tree: lengths must be positive");
  std::mt19937_64 rng(seed);
  auto length = [&] { return universe[detail::draw_below(rng, universe.size())]; };

  struct E { NodeId a, b; Rational len; };
  std::vector<E> edges;
  NodeId next = 0;
  std::vector<std::optional<int>> labels;
  auto new_node = [&](std::optional<int> label) {
    labels.push_back(label);
    return next++;
  };
  // leaf order is randomised by labelling at the end
  NodeId centre = new_node(std::nullopt);
  for (int i = 0; i < 3; ++i) edges.push_back({centre, new_node(i), length()});
  for (int k = 3; k < n; ++k) {
    std::size_t pick = detail::draw_below(rng, edges.size());
    E old = edges[pick];
    NodeId mid = new_node(std::nullopt);
    NodeId leaf = new_node(k);
    edges[pick] = {old.a, mid, length()};
    edges.push_back({mid, old.b, length()});
    edges.push_back({mid, leaf, length()});
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)], perm[detail::draw_below(rng, static_cast<std::uint64_t>(i) + 1)]);

  WeightedTree::Builder b;
  for (auto& l : labels) {
    if (l) b.add_leaf(perm[static_cast<std::size_t>(*l)]);
    else b.add_node();
  }
  for (auto& e : edges) b.add_edge(e.a, e.b, e.len);
  return std::move(b).build();
}

// Random equidistant binary m-tree built coalescent-style: repeatedly merge two
// random clusters at a strictly larger height.
inline EquidistantTree random_equidistant(int m, std::uint64_t seed) {
  if (m < 2) throw std::invalid_argument("random_equidistant: m must be at least 2");
  std::mt19937_64 rng(seed);
  WeightedTree::Builder b;
  std::vector<int> perm(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  for (int i = m - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)], perm[detail::draw_below(rng, static_cast<std::uint64_t>(i) + 1)]);

  struct Cluster { NodeId node; Rational height; };
  std::vector<Cluster> live;
  for (int i = 0; i < m; ++i) live.push_back({b.add_leaf(perm[static_cast<std::size_t>(i)]), Rational(0)});
  Rational h;
  while (live.size() > 1) {
    // increments k/6 for k in 1..12 give varied but exact heights
    h += Rational(static_cast<long>(1 + detail::draw_below(rng, 12))) / Rational(6);
    std::size_t i = detail::draw_below(rng, live.size());
    std::size_t j = detail::draw_below(rng, live.size() - 1);
    if (j >= i) ++j;
    NodeId parent = b.add_node();
    b.add_edge(parent, live[i].node, h - live[i].height);
    b.add_edge(parent, live[j].node, h - live[j].height);
    Cluster merged{parent, h};
    if (i > j) std::swap(i, j);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(j));
    live[i] = merged;
  }
  b.set_root(live.front().node);
  return EquidistantTree(std::move(b).build());
}

}  // namespace troptree
