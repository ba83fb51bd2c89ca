#pragma once

#include "troptree/exact/puiseux.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace troptree {

class PolyMatrix {
 public:
  PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("PolyMatrix: dimensions must be positive");
  }

  static PolyMatrix identity(std::size_t k) {
    PolyMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = PuiseuxPoly(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool is_square() const { return rows_ == cols_; }

  PuiseuxPoly& operator()(std::size_t r, std::size_t c) { return entries_.at(index(r, c)); }
  const PuiseuxPoly& operator()(std::size_t r, std::size_t c) const { return entries_.at(index(r, c)); }

  // Square submatrix (or any column selection) built from 0-based column indices.
  [[nodiscard]] PolyMatrix columns(std::span<const std::size_t> picks) const {
    PolyMatrix out(rows_, picks.size());
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t j = 0; j < picks.size(); ++j) out(r, j) = (*this)(r, picks[j]);
    return out;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  [[nodiscard]] std::size_t index(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw std::out_of_range("PolyMatrix: index out of range");
    return r * cols_ + c;
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<PuiseuxPoly> entries_;
};

namespace detail {

inline void require_square(const PolyMatrix& m) {
  if (!m.is_square())
    throw std::invalid_argument("determinant: matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", not square");
}

// Sum over all permutations sigma of sign(sigma) * prod_r m(r, sigma(r)).
inline PuiseuxPoly determinant_permutations(const PolyMatrix& m) {
  const std::size_t k = m.rows();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  PuiseuxPoly det;
  do {
    bool odd = false;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) odd = !odd;
    PuiseuxPoly term(1);
    bool zero = false;
    for (std::size_t r = 0; r < k && !zero; ++r) {
      const auto& e = m(r, perm[r]);
      if (e.is_zero()) zero = true;
      else term *= e;
    }
    if (zero) continue;
    if (odd) det -= term;
    else det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

// Division-free cofactor expansion along the rows, memoised on the set of
// columns still available. Row r is expanded against every k-r subset once.
inline PuiseuxPoly determinant_memo_laplace(const PolyMatrix& m) {
  const std::size_t k = m.rows();
  if (k > 24) throw std::invalid_argument("determinant: matrix too large for subset expansion");
  std::unordered_map<std::uint32_t, PuiseuxPoly> memo;
  // minor(mask) = det of rows [k - popcount(mask), k) restricted to columns in mask.
  auto minor = [&](auto&& self, std::uint32_t mask) -> PuiseuxPoly {
    if (mask == 0) return PuiseuxPoly(1);
    if (auto it = memo.find(mask); it != memo.end()) return it->second;
    const std::size_t row = k - static_cast<std::size_t>(__builtin_popcount(mask));
    PuiseuxPoly sum;
    bool negative = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (!(mask & (1u << c))) continue;
      const auto& e = m(row, c);
      if (!e.is_zero()) {
        PuiseuxPoly term = e * self(self, mask & ~(1u << c));
        if (negative) sum -= term;
        else sum += term;
      }
      negative = !negative;
    }
    memo.emplace(mask, sum);
    return sum;
  };
  return minor(minor, (1u << k) - 1u);
}

}  // namespace detail

// Exact determinant. Permutation expansion up to 6x6, memoised division-free
// Laplace expansion beyond; both agree with the permutation-sum definition.
inline PuiseuxPoly determinant(const PolyMatrix& m) {
  detail::require_square(m);
  if (m.rows() <= 6) return detail::determinant_permutations(m);
  return detail::determinant_memo_laplace(m);
}

inline PuiseuxPoly determinant_laplace(const PolyMatrix& m) {
  detail::require_square(m);
  return detail::determinant_memo_laplace(m);
}

}  // namespace troptree
