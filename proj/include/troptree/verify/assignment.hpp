#pragma once

// Coefficients a_j(e) attached to every edge e of an equidistant tree for
// every row family j. Numeric assignments hold rationals; symbolic ones turn
// each (edge, family) into its own variable.

#include "troptree/exact/coeff_poly.hpp"
#include "troptree/trees/equidistant_tree.hpp"
#include "troptree/trees/random_trees.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace troptree {

class CoefficientAssignment {
 public:
  enum class Mode { Numeric, Symbolic };

  // Variables are named <family><edge>, e.g. "a1(r,v)". The default family
  // names are a1, a2, ...
  static CoefficientAssignment symbolic(const EquidistantTree& t, int families,
                                        std::vector<std::string> family_names = {}) {
    if (family_names.empty())
      for (int j = 1; j <= families; ++j) family_names.push_back("a" + std::to_string(j));
    if (static_cast<int>(family_names.size()) != families)
      throw std::invalid_argument("CoefficientAssignment: wrong number of family names");
    CoefficientAssignment a(Mode::Symbolic, families, t.tree().node_count());
    std::vector<std::string> names;
    const auto edges = t.edges_preorder();
    for (int j = 1; j <= families; ++j)
      for (NodeId c : edges) names.push_back(family_names[static_cast<std::size_t>(j - 1)] + t.edge_name(c));
    a.vars_ = make_variables(names);
    std::size_t idx = 0;
    for (int j = 1; j <= families; ++j)
      for (NodeId c : edges) a.coeffs_[{c, j}] = CoeffPoly::variable(a.vars_, names[idx++]);
    return a;
  }

  static CoefficientAssignment numeric(const EquidistantTree& t, int families,
                                       const std::function<Rational(NodeId child, int family)>& value) {
    CoefficientAssignment a(Mode::Numeric, families, t.tree().node_count());
    for (int j = 1; j <= families; ++j)
      for (NodeId c : t.edges_preorder()) a.coeffs_[{c, j}] = CoeffPoly(value(c, j));
    return a;
  }

  // Family-major over the edges in preorder: values[0..E) fill family 1, etc.
  static CoefficientAssignment from_sequence(const EquidistantTree& t, int families,
                                             const std::vector<Rational>& values) {
    const auto edges = t.edges_preorder();
    if (values.size() != edges.size() * static_cast<std::size_t>(families))
      throw std::invalid_argument("CoefficientAssignment: expected " +
                                  std::to_string(edges.size() * static_cast<std::size_t>(families)) +
                                  " values, got " + std::to_string(values.size()));
    std::map<NodeId, std::size_t> pos;
    for (std::size_t i = 0; i < edges.size(); ++i) pos[edges[i]] = i;
    return numeric(t, families, [&](NodeId c, int j) {
      return values[static_cast<std::size_t>(j - 1) * edges.size() + pos.at(c)];
    });
  }

  // Uniform integers in [-bound, bound] from a seeded generator.
  static CoefficientAssignment random(const EquidistantTree& t, int families, std::uint64_t seed,
                                      std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("CoefficientAssignment: bound must be positive");
    std::mt19937_64 rng(seed);
    std::vector<Rational> values;
    const auto edges = t.edges_preorder();
    for (std::size_t i = 0; i < edges.size() * static_cast<std::size_t>(families); ++i) {
      auto x = static_cast<long>(detail::draw_below(rng, 2 * bound + 1)) - static_cast<long>(bound);
      values.emplace_back(x);
    }
    return from_sequence(t, families, values);
  }

  [[nodiscard]] Mode mode() const { return mode_; }
  [[nodiscard]] int families() const { return families_; }
  [[nodiscard]] const VarsPtr& variables() const { return vars_; }

  [[nodiscard]] const CoeffPoly& coefficient(NodeId child, int family) const {
    auto it = coeffs_.find({child, family});
    if (it == coeffs_.end())
      throw std::out_of_range("CoefficientAssignment: no coefficient for family " + std::to_string(family) +
                              " on edge above node " + std::to_string(child));
    return it->second;
  }

  // Checks that the assignment was made for a tree of this size and covers families 1..k.
  void require(const EquidistantTree& t, int k) const {
    if (t.tree().node_count() != node_count_)
      throw std::invalid_argument("CoefficientAssignment: assignment belongs to a different tree");
    if (k > families_)
      throw std::invalid_argument("CoefficientAssignment: needs " + std::to_string(k) + " families, has " +
                                  std::to_string(families_));
  }

 private:
  CoefficientAssignment(Mode mode, int families, std::size_t node_count)
      : mode_(mode), families_(families), node_count_(node_count) {
    if (families < 1) throw std::invalid_argument("CoefficientAssignment: need at least one family");
  }

  Mode mode_;
  int families_;
  std::size_t node_count_;
  VarsPtr vars_;
  std::map<std::pair<NodeId, int>, CoeffPoly> coeffs_;
};

inline std::vector<Rational> first_primes(std::size_t count) {
  std::vector<Rational> out;
  for (long p = 2; out.size() < count; ++p) {
    bool prime = true;
    for (long q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    if (prime) out.emplace_back(p);
  }
  return out;
}

}  // namespace troptree
