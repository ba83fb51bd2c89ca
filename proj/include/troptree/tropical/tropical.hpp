#pragma once

// Max-plus tropical polynomials, the phi^(m) map from pairwise distances to
// m-subset weights, and three-term tropical Pluecker relations.
//
// Sign convention: max-plus throughout. A polynomial f over the Puiseux
// field tropicalises with constants -val(f_i), and dissimilarity values enter
// the Pluecker checks with a positive sign, because D(I) = -val(minor_I) for
// the witness matrices built in verify/.

#include "troptree/metrics/conditions.hpp"
#include "troptree/metrics/dissimilarity.hpp"
#include "troptree/util/check.hpp"
#include "troptree/util/subsets.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace troptree {

class TropicalPolynomial {
 public:
  struct Term {
    Rational constant;
    std::map<std::string, int> exponents;  // coordinate name -> nonnegative power
  };

  explicit TropicalPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("TropicalPolynomial: needs at least one term");
    for (auto& t : terms_)
      for (auto& [name, p] : t.exponents)
        if (p < 0) throw std::invalid_argument("TropicalPolynomial: negative exponent on " + name);
  }

  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }

 private:
  std::vector<Term> terms_;
};

struct CornerResult {
  Rational value;                  // the maximum
  std::vector<std::size_t> achievers;  // indices of the terms attaining it
  [[nodiscard]] bool in_corner_locus() const { return achievers.size() >= 2; }
};

inline CornerResult trop_eval(const TropicalPolynomial& f, const std::map<std::string, Rational>& point) {
  std::vector<Rational> values;
  values.reserve(f.terms().size());
  for (const auto& t : f.terms()) {
    Rational v = t.constant;
    for (const auto& [name, p] : t.exponents) {
      auto it = point.find(name);
      if (it == point.end()) throw std::invalid_argument("trop_eval: missing coordinate '" + name + "'");
      v += Rational(p) * it->second;
    }
    values.push_back(std::move(v));
  }
  CornerResult r{*std::max_element(values.begin(), values.end()), {}};
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i] == r.value) r.achievers.push_back(i);
  return r;
}

// Cyclic orders of positions 0..m-1 starting at 0, one per reversal pair:
// (m-1)!/2 orders for m >= 3, the single order (0,1) for m = 2.
inline std::vector<std::vector<int>> cyclic_orders(int m) {
  if (m < 2) throw std::invalid_argument("cyclic_orders: m must be at least 2");
  std::vector<int> rest(static_cast<std::size_t>(m - 1));
  std::iota(rest.begin(), rest.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    if (m >= 3 && rest.front() > rest.back()) continue;  // reversal of an order already taken
    std::vector<int> cyc{0};
    cyc.insert(cyc.end(), rest.begin(), rest.end());
    out.push_back(std::move(cyc));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

// Half the minimum closed-tour length through each m-subset.
inline MVector phi_m(const DissimilarityMatrix& x, int m) {
  const int n = x.size();
  if (m < 2 || m > n) throw std::invalid_argument("phi_m: need 2 <= m <= n");
  const auto orders = cyclic_orders(m);
  MVector out(n, m);
  for (auto& s : k_subsets(n, m)) {
    std::optional<Rational> best;
    for (const auto& cyc : orders) {
      Rational tour;
      for (int p = 0; p < m; ++p)
        tour += x(s[static_cast<std::size_t>(cyc[static_cast<std::size_t>(p)])],
                  s[static_cast<std::size_t>(cyc[static_cast<std::size_t>((p + 1) % m)])]);
      if (!best || tour < *best) best = tour;
    }
    out.set(std::move(s), *best / Rational(2));
  }
  return out;
}

inline MVector phi_m(const MVector& x, int m) {
  if (x.m() != 2) throw std::invalid_argument("phi_m: input must be a pairwise (m = 2) vector");
  return phi_m(to_matrix(x), m);
}

struct PlueckerWitness {
  Subset common;                 // the shared (m-2)-subset S
  std::array<int, 4> indices;    // i < j < k < l, disjoint from S
  std::array<Rational, 3> sums;  // V(S+ij)+V(S+kl), V(S+ik)+V(S+jl), V(S+il)+V(S+jk)
};

namespace detail {
inline Subset with_pair(const Subset& s, int a, int b) {
  Subset out = s;
  out.push_back(a);
  out.push_back(b);
  std::sort(out.begin(), out.end());
  return out;
}
}  // namespace detail

// Three-term tropical Pluecker relations: for every (m-2)-subset S and
// i<j<k<l outside S, the maximum of the three pairings is attained twice.
// For m = 2 this is the four-point condition on distinct indices and a
// tropical basis; for m >= 3 it is only a necessary condition for G(m,n).
inline Check<PlueckerWitness> pluecker_3term_scan(const MVector& v) {
  const int n = v.n();
  const int m = v.m();
  if (m < 2) throw std::invalid_argument("pluecker_3term_scan: m must be at least 2");
  if (!v.complete()) throw std::invalid_argument("pluecker_3term_scan: vector must cover all m-subsets");
  for (const auto& s : k_subsets(n, m - 2)) {
    std::vector<int> free;
    for (int x = 1; x <= n; ++x)
      if (!std::binary_search(s.begin(), s.end(), x)) free.push_back(x);
    const int f = static_cast<int>(free.size());
    for (const auto& q : k_subsets(f, 4)) {
      int i = free[static_cast<std::size_t>(q[0] - 1)], j = free[static_cast<std::size_t>(q[1] - 1)];
      int k = free[static_cast<std::size_t>(q[2] - 1)], l = free[static_cast<std::size_t>(q[3] - 1)];
      using detail::with_pair;
      std::array<Rational, 3> sums{v.at(with_pair(s, i, j)) + v.at(with_pair(s, k, l)),
                                   v.at(with_pair(s, i, k)) + v.at(with_pair(s, j, l)),
                                   v.at(with_pair(s, i, l)) + v.at(with_pair(s, j, k))};
      if (!max_attained_twice(sums)) return Check<PlueckerWitness>::fail({s, {i, j, k, l}, sums});
    }
  }
  return Check<PlueckerWitness>::pass();
}

inline std::string pluecker_coordinate(int i, int j) { return "x" + std::to_string(i) + "_" + std::to_string(j); }

// trop(p_ijkl) = max{x_ij + x_kl, x_ik + x_jl, x_il + x_jk}.
inline TropicalPolynomial tropical_pluecker_relation(int i, int j, int k, int l) {
  auto term = [](int a, int b, int c, int d) {
    return TropicalPolynomial::Term{Rational(0), {{pluecker_coordinate(a, b), 1}, {pluecker_coordinate(c, d), 1}}};
  };
  return TropicalPolynomial({term(i, j, k, l), term(i, k, j, l), term(i, l, j, k)});
}

// Membership in the tropical Grassmannian G(2,n): every trop(p_ijkl) has its
// maximum attained at least twice at the point D.
inline Check<PlueckerWitness> grassmannian2_membership(const DissimilarityMatrix& d) {
  const int n = d.size();
  std::map<std::string, Rational> point;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) point[pluecker_coordinate(i, j)] = d(i, j);
  for (const auto& q : k_subsets(n, 4)) {
    auto r = trop_eval(tropical_pluecker_relation(q[0], q[1], q[2], q[3]), point);
    if (!r.in_corner_locus()) {
      auto sums = four_point_sums(d, q[0], q[1], q[2], q[3]);
      return Check<PlueckerWitness>::fail({{}, {q[0], q[1], q[2], q[3]}, sums});
    }
  }
  return Check<PlueckerWitness>::pass();
}

}  // namespace troptree
