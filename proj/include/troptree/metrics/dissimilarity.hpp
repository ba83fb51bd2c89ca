#pragma once

#include "troptree/exact/rational.hpp"
#include "troptree/trees/weighted_tree.hpp"
#include "troptree/util/subsets.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

// Symmetric matrix with zero diagonal, indexed by leaf labels 1..n.
class DissimilarityMatrix {
 public:
  explicit DissimilarityMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    if (n < 1) throw std::invalid_argument("DissimilarityMatrix: n must be positive");
  }

  // Rows indexed by label - 1. Throws unless square, symmetric, zero-diagonal.
  explicit DissimilarityMatrix(const std::vector<std::vector<Rational>>& rows)
      : DissimilarityMatrix(static_cast<int>(rows.size())) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size())
        throw std::invalid_argument("DissimilarityMatrix: row " + std::to_string(i + 1) + " has " +
                                    std::to_string(rows[i].size()) + " entries, expected " +
                                    std::to_string(rows.size()));
      for (std::size_t j = 0; j < rows.size(); ++j) d_[i * rows.size() + j] = rows[i][j];
    }
    for (int i = 1; i <= n_; ++i) {
      if (!at(i, i).is_zero())
        throw std::invalid_argument("DissimilarityMatrix: nonzero diagonal entry at " + std::to_string(i));
      for (int j = i + 1; j <= n_; ++j)
        if (at(i, j) != at(j, i))
          throw std::invalid_argument("DissimilarityMatrix: not symmetric at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
    }
  }

  [[nodiscard]] int size() const { return n_; }
  [[nodiscard]] const Rational& at(int i, int j) const { return d_.at(index(i, j)); }
  const Rational& operator()(int i, int j) const { return at(i, j); }

  // Sets both (i,j) and (j,i).
  void set(int i, int j, const Rational& v) {
    if (i == j && !v.is_zero()) throw std::invalid_argument("DissimilarityMatrix: diagonal must be zero");
    d_.at(index(i, j)) = v;
    d_.at(index(j, i)) = v;
  }

  // Restriction to the labels 1..k.
  [[nodiscard]] DissimilarityMatrix leading(int k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("DissimilarityMatrix::leading: bad size");
    DissimilarityMatrix out(k);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= k; ++j) out.d_[out.index(i, j)] = at(i, j);
    return out;
  }

  [[nodiscard]] std::vector<std::vector<Rational>> rows() const {
    std::vector<std::vector<Rational>> out(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) out[static_cast<std::size_t>(i - 1)].push_back(at(i, j));
    return out;
  }

  friend bool operator==(const DissimilarityMatrix&, const DissimilarityMatrix&) = default;

 private:
  [[nodiscard]] std::size_t index(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw std::out_of_range("DissimilarityMatrix: index (" + std::to_string(i) + "," + std::to_string(j) +
                              ") out of range");
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j - 1);
  }

  int n_;
  std::vector<Rational> d_;
};

inline DissimilarityMatrix distance_matrix(const WeightedTree& t) { return DissimilarityMatrix(leaf_distances(t)); }

// Values on all m-subsets of [n].
class MVector {
 public:
  MVector(int n, int m) : n_(n), m_(m) {
    if (m < 1 || m > n) throw std::invalid_argument("MVector: need 1 <= m <= n");
  }

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] int m() const { return m_; }
  [[nodiscard]] const std::map<Subset, Rational>& values() const { return values_; }
  [[nodiscard]] bool complete() const { return values_.size() == binomial(n_, m_); }

  [[nodiscard]] const Rational& at(const Subset& s) const {
    auto it = values_.find(s);
    if (it == values_.end()) throw std::out_of_range("MVector: subset not present");
    return it->second;
  }
  void set(Subset s, Rational v) {
    if (static_cast<int>(s.size()) != m_) throw std::invalid_argument("MVector: subset has the wrong size");
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] < 1 || s[i] > n_ || (i > 0 && s[i - 1] >= s[i]))
        throw std::invalid_argument("MVector: subsets must be increasing labels in 1..n");
    values_[std::move(s)] = std::move(v);
  }

  friend bool operator==(const MVector&, const MVector&) = default;

 private:
  int n_;
  int m_;
  std::map<Subset, Rational> values_;
};

inline MVector to_mvector(const DissimilarityMatrix& d) {
  MVector v(d.size(), 2);
  for (const auto& s : k_subsets(d.size(), 2)) v.set(s, d.at(s[0], s[1]));
  return v;
}

inline DissimilarityMatrix to_matrix(const MVector& v) {
  if (v.m() != 2) throw std::invalid_argument("to_matrix: MVector must have m = 2");
  DissimilarityMatrix d(v.n());
  for (const auto& [s, x] : v.values()) d.set(s[0], s[1], x);
  return d;
}

// The m-dissimilarity vector: minimal-subtree weight of every m-subset.
inline MVector dissimilarity_of_tree(const WeightedTree& t, int m) {
  const int n = t.leaf_count();
  if (m < 2 || m > n) throw std::invalid_argument("dissimilarity_of_tree: need 2 <= m <= n");
  MVector v(n, m);
  for (auto& s : k_subsets(n, m)) {
    Rational w = steiner_weight(t, s);
    v.set(std::move(s), std::move(w));
  }
  return v;
}

}  // namespace troptree
