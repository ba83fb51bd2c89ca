#pragma once

// Witness matrices over Puiseux polynomials. Each column belongs to a leaf;
// the maximal minors' degrees (or valuations) encode m-dissimilarity values.

#include "troptree/exact/poly_matrix.hpp"
#include "troptree/trees/equidistant_tree.hpp"
#include "troptree/trees/newick.hpp"
#include "troptree/util/subsets.hpp"
#include "troptree/verify/assignment.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

// sum of a_j(e) t^{s h(e)} over the edges e between the root and leaf i.
inline PuiseuxPoly leaf_series(const EquidistantTree& t, const CoefficientAssignment& a, int leaf, int family,
                               const Rational& scale) {
  if (leaf < 1 || leaf > t.leaf_count()) throw std::out_of_range("leaf_series: unknown leaf " + std::to_string(leaf));
  if (family < 1 || family > a.families())
    throw std::out_of_range("leaf_series: unknown family " + std::to_string(family));
  PuiseuxPoly out;
  for (NodeId c : t.path_to_root(leaf)) out += PuiseuxPoly::monomial(a.coefficient(c, family), scale * t.edge_height(c));
  return out;
}

struct WitnessMatrix {
  PolyMatrix matrix;
  std::string construction;  // "thm5", "anchored", "ones-row", "N", plus "+rescaled", "+valuation"
  std::vector<int> column_labels;
  Rational scale;        // exponent scale s in t^{s h(e)}
  std::string tree_digest;

  [[nodiscard]] int rows() const { return static_cast<int>(matrix.rows()); }

  // Square submatrix on the columns carrying the given labels.
  [[nodiscard]] PolyMatrix minor(const Subset& labels) const {
    std::vector<std::size_t> picks;
    for (int l : labels) {
      auto it = std::find(column_labels.begin(), column_labels.end(), l);
      if (it == column_labels.end()) throw std::out_of_range("WitnessMatrix: no column for label " + std::to_string(l));
      picks.push_back(static_cast<std::size_t>(it - column_labels.begin()));
    }
    return matrix.columns(picks);
  }
};

namespace detail {

inline std::vector<int> all_leaves(const EquidistantTree& t) {
  std::vector<int> out(static_cast<std::size_t>(t.leaf_count()));
  std::iota(out.begin(), out.end(), 1);
  return out;
}

inline void require_columns(const EquidistantTree& t, const std::vector<int>& columns, std::size_t rows,
                            std::size_t extra_columns = 0) {
  if (columns.size() + extra_columns < rows)
    throw std::invalid_argument("witness matrix: need at least " + std::to_string(rows) + " columns");
  std::vector<int> sorted = columns;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("witness matrix: repeated column label");
  for (int l : sorted)
    if (l < 1 || l > t.leaf_count()) throw std::out_of_range("witness matrix: unknown leaf " + std::to_string(l));
}

}  // namespace detail

namespace detail {

inline WitnessMatrix ones_row_matrix(const EquidistantTree& t, const CoefficientAssignment& a, int m,
                                     const Rational& scale, std::vector<int> columns, std::size_t extra_columns) {
  if (m < 3) throw std::invalid_argument("build_ones_row_matrix: m must be at least 3");
  a.require(t, m - 2);
  if (columns.empty()) columns = detail::all_leaves(t);
  detail::require_columns(t, columns, static_cast<std::size_t>(m), extra_columns);
  PolyMatrix mat(static_cast<std::size_t>(m), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    PuiseuxPoly x1 = leaf_series(t, a, columns[c], 1, scale);
    mat(0, c) = PuiseuxPoly(1);
    mat(2, c) = x1 * x1;
    mat(1, c) = std::move(x1);
    for (int j = 2; j <= m - 2; ++j) mat(static_cast<std::size_t>(j + 1), c) = leaf_series(t, a, columns[c], j, scale);
  }
  return {std::move(mat), "ones-row", columns, scale, tree_digest(t.tree())};
}

}  // namespace detail

// Rows 1; x^(1); (x^(1))^2; x^(2); ...; x^(m-2) on the given leaves (default all).
inline WitnessMatrix build_ones_row_matrix(const EquidistantTree& t, const CoefficientAssignment& a, int m,
                                           const Rational& scale, std::vector<int> columns = {}) {
  return detail::ones_row_matrix(t, a, m, scale, std::move(columns), 0);
}

// The square m x m matrix on all leaves of an equidistant m-tree.
inline WitnessMatrix build_conj3_matrix(const EquidistantTree& t, const CoefficientAssignment& a,
                                        const Rational& scale) {
  return build_ones_row_matrix(t, a, t.leaf_count(), scale);
}

// Rows x^(1); ...; x^(m) with no row of ones.
inline WitnessMatrix build_N_matrix(const EquidistantTree& t, const CoefficientAssignment& a, int m,
                                    const Rational& scale, std::vector<int> columns = {}) {
  if (m < 1) throw std::invalid_argument("build_N_matrix: m must be positive");
  a.require(t, m);
  if (columns.empty()) columns = detail::all_leaves(t);
  detail::require_columns(t, columns, static_cast<std::size_t>(m));
  PolyMatrix mat(static_cast<std::size_t>(m), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (int j = 1; j <= m; ++j) mat(static_cast<std::size_t>(j - 1), c) = leaf_series(t, a, columns[c], j, scale);
  return {std::move(mat), "N", columns, scale, tree_digest(t.tree())};
}

// The ones-row matrix on the leaves 1..n-1 of T'' plus an anchor column n,
// whose series entries are all t^{s (d' + d'')/2}, d' the root height of T''.
inline WitnessMatrix build_anchored_matrix(const EquidistantTree& t, const Rational& anchor_length,
                                           const CoefficientAssignment& a, int m, const Rational& scale) {
  if (anchor_length < t.root_height())
    throw std::invalid_argument("build_anchored_matrix: anchor length " + anchor_length.str() +
                                " is below the root height " + t.root_height().str());
  WitnessMatrix w = detail::ones_row_matrix(t, a, m, scale, {}, 1);
  const int n = t.leaf_count() + 1;
  const Rational e = scale * (t.root_height() + anchor_length) / Rational(2);
  PolyMatrix mat(w.matrix.rows(), w.matrix.cols() + 1);
  for (std::size_t r = 0; r < mat.rows(); ++r)
    for (std::size_t c = 0; c < w.matrix.cols(); ++c) mat(r, c) = w.matrix(r, c);
  const std::size_t last = w.matrix.cols();
  mat(0, last) = PuiseuxPoly(1);
  mat(1, last) = PuiseuxPoly::t_power(e);
  mat(2, last) = PuiseuxPoly::t_power(e + e);
  for (std::size_t r = 3; r < mat.rows(); ++r) mat(r, last) = PuiseuxPoly::t_power(e);
  w.matrix = std::move(mat);
  w.column_labels.push_back(n);
  w.construction = "anchored";
  w.tree_digest = tree_digest(attach_anchor(t, anchor_length));
  return w;
}

// The 4 x n matrix with rows 1, x, x^2, y and x_n = y_n = t^{2E}.
inline WitnessMatrix build_thm5_matrix(const EquidistantTree& t, const Rational& e, const CoefficientAssignment& a) {
  if (e < t.root_height())
    throw std::invalid_argument("build_thm5_matrix: E = " + e.str() + " is below the root height " +
                                t.root_height().str());
  WitnessMatrix w = build_anchored_matrix(t, Rational(2) * e - t.root_height(), a, 4, Rational(2));
  w.construction = "thm5";
  return w;
}

// Multiplies the column of each listed label by t^{exponent}.
inline WitnessMatrix rescale_columns(const WitnessMatrix& w, const std::map<int, Rational>& exponents) {
  WitnessMatrix out = w;
  for (const auto& [label, shift] : exponents) {
    auto it = std::find(w.column_labels.begin(), w.column_labels.end(), label);
    if (it == w.column_labels.end())
      throw std::out_of_range("rescale_columns: no column for label " + std::to_string(label));
    const auto c = static_cast<std::size_t>(it - w.column_labels.begin());
    for (std::size_t r = 0; r < out.matrix.rows(); ++r) out.matrix(r, c) = out.matrix(r, c).shifted(shift);
  }
  out.construction += "+rescaled";
  return out;
}

inline WitnessMatrix substitute_scale(const WitnessMatrix& w, const Rational& s) {
  WitnessMatrix out = w;
  for (std::size_t r = 0; r < out.matrix.rows(); ++r)
    for (std::size_t c = 0; c < out.matrix.cols(); ++c) out.matrix(r, c) = out.matrix(r, c).substitute_scale(s);
  out.scale = w.scale * s;
  return out;
}

// t -> t^{-1/s} entrywise, so degrees s*D become valuations -D.
inline WitnessMatrix to_valuation_witness(const WitnessMatrix& w) {
  WitnessMatrix out = substitute_scale(w, Rational(-1) / w.scale);
  out.construction += "+valuation";
  return out;
}

}  // namespace troptree
