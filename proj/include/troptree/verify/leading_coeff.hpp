#pragma once

// Closed forms for the top coefficient of det M'(1,2,3,4) for the three
// combinatorial types of 4-leaf subtrees, checked against the symbolic
// determinant.
//
// Edge names follow the pictures: every internal node z has a left edge e_z
// and a right edge e'_z. Type I: w over 1,2 and u over 3,4, joined at v.
// Type II: u over 1,2, w over u and 3, v over w and 4. Type III: w over 1,2,
// v over w and 3, with the anchor leaf 4 hanging above v.

#include "troptree/verify/pipelines.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

enum class FourLeafType { I, II, III };

inline std::string type_name(FourLeafType t) {
  switch (t) {
    case FourLeafType::I: return "I";
    case FourLeafType::II: return "II";
    default: return "III";
  }
}

inline FourLeafType parse_four_leaf_type(std::string_view s) {
  if (s == "I") return FourLeafType::I;
  if (s == "II") return FourLeafType::II;
  if (s == "III") return FourLeafType::III;
  throw std::invalid_argument("unknown four-leaf type '" + std::string(s) + "'");
}

// A small equidistant tree of each type with distinct heights. For type III
// this is the 3-leaf tree below the anchor.
inline EquidistantTree four_leaf_type_tree(FourLeafType t) {
  switch (t) {
    case FourLeafType::I: return EquidistantTree(parse_newick("[&R]((1:1,2:1)w:2,(3:2,4:2)u:1)v;"));
    case FourLeafType::II: return EquidistantTree(parse_newick("[&R](((1:1,2:1)u:1,3:2)w:1,4:3)v;"));
    default: return EquidistantTree(parse_newick("[&R]((1:1,2:1)w:1,3:2)v;"));
  }
}

// Anchor constant E used for the type III check.
inline Rational type_III_shift() { return Rational(3); }

struct TypeEdges {
  // Nodes standing for the edges above them.
  NodeId e_u = 0, e_u2 = 0, e_w = 0, e_w2 = 0, e_v = 0, e_v2 = 0;
};

inline TypeEdges locate_type_edges(FourLeafType type, const EquidistantTree& t) {
  const auto& tr = t.tree();
  auto fail = [&] { return std::invalid_argument("tree does not have type " + type_name(type)); };
  auto leaf = [&](int l) {
    if (l > tr.leaf_count()) throw fail();
    return tr.leaf_node(l);
  };
  auto up = [&](NodeId x) {
    auto p = t.parent(x);
    if (!p) throw fail();
    return *p;
  };
  auto kids_are = [&](NodeId z, NodeId a, NodeId b) {
    const auto& k = t.children(z);
    return k.size() == 2 && ((k[0] == a && k[1] == b) || (k[0] == b && k[1] == a));
  };
  TypeEdges e;
  switch (type) {
    case FourLeafType::I: {
      if (tr.leaf_count() != 4) throw fail();
      NodeId w = up(leaf(1)), u = up(leaf(3)), v = t.root();
      if (!kids_are(w, leaf(1), leaf(2)) || !kids_are(u, leaf(3), leaf(4)) || !kids_are(v, w, u)) throw fail();
      e = {leaf(3), leaf(4), leaf(1), leaf(2), w, u};
      break;
    }
    case FourLeafType::II: {
      if (tr.leaf_count() != 4) throw fail();
      NodeId u = up(leaf(1)), w = up(u), v = t.root();
      if (!kids_are(u, leaf(1), leaf(2)) || !kids_are(w, u, leaf(3)) || !kids_are(v, w, leaf(4))) throw fail();
      e = {leaf(1), leaf(2), u, leaf(3), w, leaf(4)};
      break;
    }
    case FourLeafType::III: {
      if (tr.leaf_count() != 3) throw fail();
      NodeId w = up(leaf(1)), v = t.root();
      if (!kids_are(w, leaf(1), leaf(2)) || !kids_are(v, w, leaf(3))) throw fail();
      e = {0, 0, leaf(1), leaf(2), w, leaf(3)};
      break;
    }
  }
  return e;
}

// The closed-form polynomial. Family 1 plays a, family 2 plays b.
// Readings: "corrected" for all types; for type I also "literal", where the
// primed b'(e_u) is read as b(e_u) and the middle term drops out.
inline CoeffPoly leading_coeff_formula(FourLeafType type, const EquidistantTree& t, const CoefficientAssignment& c,
                                       const std::string& reading = "corrected") {
  c.require(t, 2);
  const TypeEdges e = locate_type_edges(type, t);
  auto a = [&](NodeId x, NodeId x2) { return c.coefficient(x2, 1) - c.coefficient(x, 1); };
  auto b = [&](NodeId x, NodeId x2) { return c.coefficient(x2, 2) - c.coefficient(x, 2); };
  switch (type) {
    case FourLeafType::I: {
      if (reading != "corrected" && reading != "literal")
        throw std::invalid_argument("unknown type I reading '" + reading + "'");
      CoeffPoly av = a(e.e_v, e.e_v2);
      CoeffPoly out = b(e.e_w, e.e_w2) * a(e.e_u, e.e_u2) * av * av;
      if (reading == "corrected") out += b(e.e_u, e.e_u2) * a(e.e_w, e.e_w2) * av * av;
      out -= CoeffPoly(2) * b(e.e_v, e.e_v2) * av * a(e.e_w, e.e_w2) * a(e.e_u, e.e_u2);
      return out;
    }
    case FourLeafType::II: {
      if (reading != "corrected") throw std::invalid_argument("type II has only the corrected reading");
      CoeffPoly av = a(e.e_v, e.e_v2);
      return av * av * (b(e.e_u, e.e_u2) * a(e.e_w, e.e_w2) - b(e.e_w, e.e_w2) * a(e.e_u, e.e_u2));
    }
    case FourLeafType::III: {
      if (reading != "corrected") throw std::invalid_argument("type III has only the corrected reading");
      // The closed form calls these nodes u and w; in this tree they are w and v.
      return b(e.e_w, e.e_w2) * a(e.e_v, e.e_v2) - b(e.e_v, e.e_v2) * a(e.e_w, e.e_w2);
    }
  }
  throw std::logic_error("leading_coeff_formula: unreachable");
}

struct FormulaReading {
  std::string name;
  CoeffPoly formula;
  int sign = 0;  // +1 or -1 when coefficient = sign * formula, 0 when they differ
};

struct FormulaCheckResult {
  FourLeafType type = FourLeafType::I;
  std::string tree;
  Rational target;  // 2 D'(1,2,3,4)
  ExtRational degree = ExtRational::neg_infinity();
  CoeffPoly coefficient;  // of t^target in det M'(1,2,3,4)
  std::vector<FormulaReading> readings;

  [[nodiscard]] const FormulaReading* match() const {
    for (const auto& r : readings)
      if (r.sign != 0) return &r;
    return nullptr;
  }
  [[nodiscard]] bool passed() const {
    return degree == ExtRational(target) && !coefficient.is_zero() && match() && match()->name == "corrected";
  }
};

inline int sign_match(const CoeffPoly& coeff, const CoeffPoly& formula) {
  if (coeff.is_zero() || formula.is_zero()) return 0;
  if (coeff == formula) return 1;
  if (coeff == -formula) return -1;
  return 0;
}

inline FormulaCheckResult leading_coeff_formula_check(FourLeafType type) {
  const EquidistantTree t = four_leaf_type_tree(type);
  auto sym = CoefficientAssignment::symbolic(t, 2, {"a", "b"});
  WitnessMatrix w = [&] {
    if (type == FourLeafType::III) return build_thm5_matrix(t, type_III_shift(), sym);
    return build_ones_row_matrix(t, sym, 4, Rational(2));
  }();
  FormulaCheckResult r;
  r.type = type;
  if (type == FourLeafType::III) {
    const WeightedTree full = attach_anchor(t, Rational(2) * type_III_shift() - t.root_height());
    r.tree = to_newick(full);
    r.target = Rational(2) * steiner_weight(full, {1, 2, 3, 4});
  } else {
    r.tree = to_newick(t.tree());
    r.target = Rational(2) * steiner_weight(t.tree(), {1, 2, 3, 4});
  }
  PuiseuxPoly det = determinant(w.minor({1, 2, 3, 4}));
  r.degree = det.degree();
  r.coefficient = det.coefficient(r.target);
  std::vector<std::string> names{"corrected"};
  if (type == FourLeafType::I) names.push_back("literal");
  for (const auto& n : names) {
    CoeffPoly f = leading_coeff_formula(type, t, sym, n);
    r.readings.push_back({n, f, sign_match(r.coefficient, f)});
  }
  return r;
}

}  // namespace troptree
