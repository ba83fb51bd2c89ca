#pragma once

// End-to-end checks built from the witness matrices: the 4-dissimilarity
// pipeline for arbitrary trees, the square ones-row determinant for
// equidistant m-trees, and the N-matrix counterexample.

#include "troptree/metrics/conditions.hpp"
#include "troptree/metrics/reconstruct.hpp"
#include "troptree/trees/shape.hpp"
#include "troptree/verify/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

// No generic coefficient draw was found within the retry budget.
class GenericityExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Theorem5Result {
  Rational shift_constant;  // E
  std::uint64_t seed = 0;   // seed of the accepted draw
  int retries = 0;
  std::string shifted_tree;  // Newick of T'
  VerificationReport shifted;    // deg det M'(I) = 2 D'(I)
  VerificationReport rescaled;   // deg det M(I) = 2 D(I)
  VerificationReport valuation;  // -val det M(I)|_{t -> t^{-1/2}} = D(I)

  [[nodiscard]] bool passed() const { return shifted.all_pass() && rescaled.all_pass() && valuation.all_pass(); }
};

namespace detail {

inline std::uint64_t retry_seed(std::uint64_t seed, int attempt) {
  return seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
}

// Coefficients are drawn from [-bound, bound]; the range grows with each retry.
inline std::uint64_t retry_bound(int attempt) { return 1'000'000'000ull << (4 * std::min(attempt, 7)); }

inline bool degree_too_high(const VerificationReport& r) {
  for (const auto& m : r.minors)
    if (m.computed > ExtRational(m.expected)) return true;
  return false;
}

}  // namespace detail

inline Theorem5Result end_to_end_theorem5(const WeightedTree& t, std::uint64_t seed, int max_retries = 3) {
  const int n = t.leaf_count();
  if (n < 4) throw std::invalid_argument("end_to_end_theorem5: need at least 4 leaves");
  const DissimilarityMatrix d = distance_matrix(t);

  // D' is an ultrametric on [n-1]; realise it and hang leaf n off the root.
  // The root height is E minus the pendant length of leaf n, so a zero
  // pendant at n puts the anchor on the root itself. A zero pendant at the
  // leaf farthest from n makes some D'(i,j) vanish; a larger E separates them.
  Rational e = default_shift_constant(d);
  DissimilarityMatrix shifted = ultrametric_shift(d, e);
  bool coincident = false;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j < n; ++j) coincident = coincident || shifted(i, j).is_zero();
  if (coincident) {
    e += Rational(1);
    shifted = ultrametric_shift(d, e);
  }
  EquidistantTree inner = equidistant_realization(shifted.leading(n - 1));
  const WeightedTree anchored = attach_anchor(inner, Rational(2) * e - inner.root_height());
  if (distance_matrix(anchored) != shifted)
    throw std::logic_error("end_to_end_theorem5: anchored tree does not realise the shifted metric");

  const MVector expected_shifted = dissimilarity_of_tree(anchored, 4);
  const MVector expected = dissimilarity_of_tree(t, 4);
  std::map<int, Rational> exponents;
  for (int i = 1; i <= n; ++i) exponents[i] = Rational(2) * (d(i, n) - e);

  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    const std::uint64_t s = detail::retry_seed(seed, attempt);
    auto coeffs = CoefficientAssignment::random(inner, 2, s, detail::retry_bound(attempt));
    WitnessMatrix w = build_thm5_matrix(inner, e, coeffs);
    Theorem5Result res;
    res.shift_constant = e;
    res.seed = s;
    res.retries = attempt;
    res.shifted_tree = to_newick(anchored);
    res.shifted = verify_minor_degrees(w, expected_shifted, Rational(2));
    res.shifted.seed = s;
    // A degree above the bound is a construction error, not an unlucky draw.
    if (!res.shifted.all_pass() && detail::degree_too_high(res.shifted)) return res;
    if (!res.shifted.all_pass()) continue;
    WitnessMatrix m = rescale_columns(w, exponents);
    res.rescaled = verify_minor_degrees(m, expected, Rational(2));
    res.rescaled.seed = s;
    res.valuation = verify_minor_valuations(to_valuation_witness(m), expected);
    res.valuation.seed = s;
    return res;
  }
  throw GenericityExhausted("end_to_end_theorem5: no generic coefficients after " + std::to_string(max_retries + 1) +
                            " draws (seed " + std::to_string(seed) + ")");
}

// Heights that separate distinct exponent linear forms: internal node k in
// postorder gets the increment base^k (variant 0, base 1000) or
// base^(K-1-k) (variant 1, base 1009) over its highest child.
inline std::vector<Rational> generic_heights(const TreeShape& shape, int variant = 0) {
  if (variant != 0 && variant != 1) throw std::invalid_argument("generic_heights: variant must be 0 or 1");
  const int internal = shape.internal_count();
  const long base = variant == 0 ? 1000 : 1009;
  auto power = [&](int k) {
    Rational r(1);
    for (int i = 0; i < k; ++i) r *= Rational(base);
    return r;
  };
  std::vector<Rational> heights(static_cast<std::size_t>(internal));
  const std::string& code = shape.code();
  std::size_t pos = 0;
  int next_pre = 0;
  int next_post = 0;
  auto walk = [&](auto&& self) -> Rational {
    if (code[pos] == 'x') {
      ++pos;
      return Rational(0);
    }
    ++pos;
    const int idx = next_pre++;
    Rational a = self(self);
    Rational b = self(self);
    ++pos;
    const int post = next_post++;
    Rational h = std::max(a, b) + power(variant == 0 ? post : internal - 1 - post);
    heights[static_cast<std::size_t>(idx)] = h;
    return h;
  };
  walk(walk);
  return heights;
}

struct Conjecture3Result {
  std::string tree;  // Newick of the realised tree
  int m = 0;
  Rational total_length;
  ExtRational degree = ExtRational::neg_infinity();
  CoeffPoly leading;  // c_T at the top exponent
  std::optional<unsigned> homogeneous_degree;
  std::size_t terms = 0;

  [[nodiscard]] bool degree_matches() const { return degree == ExtRational(total_length); }
  [[nodiscard]] bool certified() const { return degree_matches() && !leading.is_zero(); }
};

inline Conjecture3Result conjecture3_run(const EquidistantTree& t, const CoefficientAssignment& a) {
  const int m = t.leaf_count();
  if (m < 3) throw std::invalid_argument("conjecture3: need at least 3 leaves");
  WitnessMatrix w = build_conj3_matrix(t, a, Rational(1));
  PuiseuxPoly det = determinant(w.matrix);
  Conjecture3Result r;
  r.tree = to_newick(t.tree());
  r.m = m;
  r.total_length = total_length(t.tree());
  r.degree = det.degree();
  r.leading = det.leading_coefficient();
  r.terms = r.leading.term_count();
  r.homogeneous_degree = r.leading.homogeneous_degree();
  return r;
}

// c_T for a shape with fully symbolic coefficients a_1..a_{m-2} and generic heights.
inline Conjecture3Result conjecture3_symbolic(const TreeShape& shape, const std::vector<Rational>& heights) {
  EquidistantTree t = realize_shape(shape, heights);
  const int m = t.leaf_count();
  if (m < 3) throw std::invalid_argument("conjecture3_symbolic: need at least 3 leaves");
  return conjecture3_run(t, CoefficientAssignment::symbolic(t, m - 2));
}

struct ShapeCertificate {
  TreeShape shape;
  Conjecture3Result primary;    // heights variant 0
  Conjecture3Result secondary;  // heights variant 1
  // Both height choices give the same degree-vs-length verdict and the same c_T.
  [[nodiscard]] bool consistent() const {
    return primary.degree_matches() == secondary.degree_matches() && primary.terms == secondary.terms &&
           primary.leading == secondary.leading;
  }
  [[nodiscard]] bool certified() const { return consistent() && primary.certified() && secondary.certified(); }
};

inline ShapeCertificate certify_shape(const TreeShape& shape) {
  return {shape, conjecture3_symbolic(shape, generic_heights(shape, 0)),
          conjecture3_symbolic(shape, generic_heights(shape, 1))};
}

inline std::vector<ShapeCertificate> certify_all_shapes(int m) {
  const auto shapes = enumerate_shapes(m);
  return parallel_map(shapes.size(), [&](std::size_t i) { return certify_shape(shapes[i]); });
}

// Numeric run on a given equidistant tree with seeded integer coefficients.
inline Conjecture3Result conjecture3_numeric(const EquidistantTree& t, std::uint64_t seed) {
  return conjecture3_run(t, CoefficientAssignment::random(t, t.leaf_count() - 2, seed, detail::retry_bound(0)));
}

// Coefficients given per edge name "(parent,child)", family-major.
inline CoefficientAssignment assignment_by_edge_names(const EquidistantTree& t, int families,
                                                      const std::vector<std::string>& edge_order,
                                                      const std::vector<Rational>& values) {
  const auto edges = t.edges_preorder();
  if (edge_order.size() != edges.size())
    throw std::invalid_argument("assignment_by_edge_names: edge list does not match the tree");
  if (values.size() != edge_order.size() * static_cast<std::size_t>(families))
    throw std::invalid_argument("assignment_by_edge_names: wrong number of values");
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < edge_order.size(); ++i) pos[edge_order[i]] = i;
  for (NodeId c : edges)
    if (!pos.contains(t.edge_name(c)))
      throw std::invalid_argument("assignment_by_edge_names: tree edge " + t.edge_name(c) + " is not listed");
  return CoefficientAssignment::numeric(t, families, [&](NodeId c, int j) {
    return values[static_cast<std::size_t>(j - 1) * edge_order.size() + pos.at(t.edge_name(c))];
  });
}

inline const char* example_m5_newick() { return "[&R](((1:4,2:4)w:3,3:7)v:3,(4:6,5:6)u:4)r;"; }
inline std::vector<std::string> example_m5_edge_order() {
  return {"(r,v)", "(v,w)", "(w,1)", "(w,2)", "(v,3)", "(r,u)", "(u,4)", "(u,5)"};
}

// The 5-leaf example: a_1..a_3 are the first 24 primes over the edges in the listed order.
inline Conjecture3Result example_m5() {
  EquidistantTree t(parse_newick(example_m5_newick()));
  auto a = assignment_by_edge_names(t, 3, example_m5_edge_order(), first_primes(24));
  return conjecture3_run(t, a);
}

struct RemarkNResult {
  Subset subset;
  Rational steiner;         // weight of the minimal subtree
  Rational root_inclusive;  // weight of the minimal subtree that also contains the root
  ExtRational degree_n = ExtRational::neg_infinity();  // deg det N(I)
  ExtRational degree_m = ExtRational::neg_infinity();  // deg det M(I), ones-row matrix

  [[nodiscard]] bool demonstrates() const {
    return degree_n == ExtRational(root_inclusive) && root_inclusive != steiner && degree_m == ExtRational(steiner);
  }
};

inline RemarkNResult remark_N_counterexample(const EquidistantTree& t, const Subset& subset) {
  const int m = static_cast<int>(subset.size());
  if (m < 3) throw std::invalid_argument("remark_N_counterexample: subset needs at least 3 leaves");
  if (t.lca(subset) == t.root())
    throw std::invalid_argument("remark_N_counterexample: the minimal subtree of the subset contains the root");
  std::vector<NodeId> terminals;
  for (int l : subset) terminals.push_back(t.tree().leaf_node(l));
  RemarkNResult r;
  r.subset = subset;
  r.steiner = steiner_weight(t.tree(), subset);
  terminals.push_back(t.root());
  r.root_inclusive = steiner_weight_nodes(t.tree(), terminals);
  auto sym = CoefficientAssignment::symbolic(t, m);
  r.degree_n = determinant(build_N_matrix(t, sym, m, Rational(1), subset).matrix).degree();
  r.degree_m = determinant(build_ones_row_matrix(t, sym, m, Rational(1), subset).matrix).degree();
  return r;
}

}  // namespace troptree
