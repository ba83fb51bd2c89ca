#pragma once

// Compares the degree (or negated valuation) of every maximal minor of a
// witness matrix with factor * expected(I).

#include "troptree/exact/poly_matrix.hpp"
#include "troptree/metrics/dissimilarity.hpp"
#include "troptree/util/parallel.hpp"
#include "troptree/verify/witness.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace troptree {

enum class MinorQuantity { Degree, NegValuation };

struct MinorRecord {
  Subset subset;
  Rational expected;    // factor * expected(I)
  ExtRational computed = ExtRational::neg_infinity();  // deg det, or -val det
  CoeffPoly leading;     // coefficient at the computed extreme exponent
  bool pass = false;
};

struct VerificationReport {
  std::string construction;
  std::string tree_digest;
  std::optional<std::uint64_t> seed;
  MinorQuantity quantity = MinorQuantity::Degree;
  Rational factor;
  std::vector<MinorRecord> minors;  // sorted by subset

  [[nodiscard]] std::size_t passed() const {
    return static_cast<std::size_t>(std::count_if(minors.begin(), minors.end(), [](auto& r) { return r.pass; }));
  }
  [[nodiscard]] bool all_pass() const { return passed() == minors.size(); }
};

namespace detail {

// The m-subsets of the witness columns, as sorted label lists.
inline std::vector<Subset> label_subsets(const WitnessMatrix& w) {
  std::vector<int> labels = w.column_labels;
  std::sort(labels.begin(), labels.end());
  std::vector<Subset> out;
  for (const auto& pos : k_subsets(static_cast<int>(labels.size()), w.rows())) {
    Subset s;
    for (int p : pos) s.push_back(labels[static_cast<std::size_t>(p - 1)]);
    out.push_back(std::move(s));
  }
  return out;
}

inline VerificationReport verify_minors(const WitnessMatrix& w, const MVector& expected, const Rational& factor,
                                        MinorQuantity quantity) {
  if (expected.m() != w.rows())
    throw std::invalid_argument("verify_minors: expected vector has m = " + std::to_string(expected.m()) +
                                ", matrix has " + std::to_string(w.rows()) + " rows");
  const auto subsets = label_subsets(w);
  for (const auto& s : subsets)
    if (!expected.values().contains(s)) throw std::invalid_argument("verify_minors: expected vector misses a subset");
  VerificationReport rep{w.construction, w.tree_digest, std::nullopt, quantity, factor, {}};
  rep.minors = parallel_map(subsets.size(), [&](std::size_t i) {
    const Subset& s = subsets[i];
    PuiseuxPoly det = determinant(w.minor(s));
    MinorRecord r;
    r.subset = s;
    r.expected = factor * expected.at(s);
    if (quantity == MinorQuantity::Degree) {
      r.computed = det.degree();
      r.leading = det.leading_coefficient();
    } else {
      r.computed = -det.valuation();
      r.leading = det.lowest_coefficient();
    }
    r.pass = !det.is_zero() && r.computed == ExtRational(r.expected) && !r.leading.is_zero();
    return r;
  });
  return rep;
}

}  // namespace detail

inline VerificationReport verify_minor_degrees(const WitnessMatrix& w, const MVector& expected,
                                               const Rational& factor) {
  return detail::verify_minors(w, expected, factor, MinorQuantity::Degree);
}

inline VerificationReport verify_minor_valuations(const WitnessMatrix& w, const MVector& expected,
                                                  const Rational& factor = Rational(1)) {
  return detail::verify_minors(w, expected, factor, MinorQuantity::NegValuation);
}

}  // namespace troptree
