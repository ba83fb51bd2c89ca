#pragma once

// Four-point and ultrametric (three-point) conditions, reported with witnesses.

#include "troptree/metrics/dissimilarity.hpp"
#include "troptree/util/check.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace troptree {

// Is the maximum of the given values attained at least twice?
template <std::size_t N>
bool max_attained_twice(const std::array<Rational, N>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < N; ++i)
    if (v[i] > v[best]) best = i;
  for (std::size_t i = 0; i < N; ++i)
    if (i != best && v[i] == v[best]) return true;
  return false;
}

struct QuadrupleWitness {
  std::array<int, 4> indices;   // i <= j <= k <= l
  std::array<Rational, 3> sums;  // D(i,j)+D(k,l), D(i,k)+D(j,l), D(i,l)+D(j,k)
};

struct TripleWitness {
  std::array<int, 3> indices;
  std::array<Rational, 3> values;  // D(i,j), D(i,k), D(j,k)
};

inline std::array<Rational, 3> four_point_sums(const DissimilarityMatrix& d, int i, int j, int k, int l) {
  return {d(i, j) + d(k, l), d(i, k) + d(j, l), d(i, l) + d(j, k)};
}

// Scans every quadruple of not necessarily distinct indices. The three
// pairings are permuted among themselves when the indices are, so multisets
// i <= j <= k <= l cover all cases.
inline Check<QuadrupleWitness> four_point_condition(const DissimilarityMatrix& d) {
  const int n = d.size();
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k)
        for (int l = k; l <= n; ++l) {
          auto sums = four_point_sums(d, i, j, k, l);
          if (!max_attained_twice(sums)) return Check<QuadrupleWitness>::fail({{i, j, k, l}, sums});
        }
  return Check<QuadrupleWitness>::pass();
}

// Three-point condition over distinct triples of `labels` (all of [n] when empty).
inline Check<TripleWitness> is_ultrametric(const DissimilarityMatrix& d, std::vector<int> labels = {}) {
  if (labels.empty())
    for (int i = 1; i <= d.size(); ++i) labels.push_back(i);
  for (int x : labels)
    if (x < 1 || x > d.size()) throw std::invalid_argument("is_ultrametric: label out of range");
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  for (std::size_t a = 0; a < labels.size(); ++a)
    for (std::size_t b = a + 1; b < labels.size(); ++b)
      for (std::size_t c = b + 1; c < labels.size(); ++c) {
        int i = labels[a], j = labels[b], k = labels[c];
        std::array<Rational, 3> v{d(i, j), d(i, k), d(j, k)};
        if (!max_attained_twice(v)) return Check<TripleWitness>::fail({{i, j, k}, v});
      }
  return Check<TripleWitness>::pass();
}

// D'(i,j) = 2E + D(i,j) - D(i,n) - D(j,n) off the diagonal, anchored at leaf n.
// E defaults to max_i D(i,n) and must be at least that.
inline DissimilarityMatrix ultrametric_shift(const DissimilarityMatrix& d, std::optional<Rational> e = std::nullopt) {
  const int n = d.size();
  if (n < 2) throw std::invalid_argument("ultrametric_shift: need n >= 2");
  Rational need = d(1, n);
  for (int i = 1; i <= n; ++i) need = std::max(need, d(i, n));
  Rational big_e = e.value_or(need);
  if (big_e < need)
    throw std::invalid_argument("ultrametric_shift: E = " + big_e.str() + " is below max D(i,n) = " + need.str());
  DissimilarityMatrix out(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      out.set(i, j, Rational(2) * big_e + d(i, j) - d(i, n) - d(j, n));
  return out;
}

inline Rational default_shift_constant(const DissimilarityMatrix& d) {
  Rational need = d(1, d.size());
  for (int i = 1; i <= d.size(); ++i) need = std::max(need, d(i, d.size()));
  return need;
}

}  // namespace troptree
