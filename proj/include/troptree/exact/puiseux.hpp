#pragma once

// Finite sums c_q t^q with rational exponents q and CoeffPoly coefficients.
// These are the elements of the Puiseux field that the witness matrices use.

#include "troptree/exact/coeff_poly.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace troptree {

class PuiseuxPoly {
 public:
  using Term = std::pair<Rational, CoeffPoly>;  // (exponent, coefficient)

  PuiseuxPoly() = default;
  PuiseuxPoly(CoeffPoly c) : PuiseuxPoly(std::move(c), Rational(0)) {}  // NOLINT(implicit)
  PuiseuxPoly(Rational c) : PuiseuxPoly(CoeffPoly(std::move(c))) {}      // NOLINT(implicit)
  template <std::integral I>
  PuiseuxPoly(I c) : PuiseuxPoly(Rational(c)) {}  // NOLINT(implicit)

  PuiseuxPoly(CoeffPoly c, Rational exponent) {
    vars_ = c.variables();
    if (!c.is_zero()) terms_.emplace_back(std::move(exponent), std::move(c));
  }

  // c * t^exponent
  static PuiseuxPoly monomial(CoeffPoly c, Rational exponent) { return {std::move(c), std::move(exponent)}; }
  static PuiseuxPoly t_power(Rational exponent) { return {CoeffPoly(1), std::move(exponent)}; }

  // Terms in strictly decreasing exponent order.
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const VarsPtr& variables() const { return vars_; }

  [[nodiscard]] ExtRational degree() const {
    if (terms_.empty()) return ExtRational::neg_infinity();
    return terms_.front().first;
  }
  [[nodiscard]] ExtRational valuation() const {
    if (terms_.empty()) return ExtRational::pos_infinity();
    return terms_.back().first;
  }
  [[nodiscard]] CoeffPoly leading_coefficient() const {
    return terms_.empty() ? CoeffPoly() : terms_.front().second;
  }
  [[nodiscard]] CoeffPoly lowest_coefficient() const {
    return terms_.empty() ? CoeffPoly() : terms_.back().second;
  }
  [[nodiscard]] CoeffPoly coefficient(const Rational& exponent) const {
    for (auto& [e, c] : terms_)
      if (e == exponent) return c;
    return CoeffPoly();
  }

  // t -> t^s, i.e. every exponent q becomes s*q.
  [[nodiscard]] PuiseuxPoly substitute_scale(const Rational& s) const {
    if (s.is_zero()) throw std::invalid_argument("substitute_scale: scale must be nonzero");
    PuiseuxPoly r;
    r.vars_ = vars_;
    r.terms_.reserve(terms_.size());
    for (auto& [e, c] : terms_) r.terms_.emplace_back(e * s, c);
    if (s.sign() < 0) std::reverse(r.terms_.begin(), r.terms_.end());
    return r;
  }

  // Multiplication by t^shift.
  [[nodiscard]] PuiseuxPoly shifted(const Rational& shift) const {
    PuiseuxPoly r = *this;
    for (auto& t : r.terms_) t.first += shift;
    return r;
  }

  PuiseuxPoly& operator+=(const PuiseuxPoly& o) {
    if (&o == this) return *this += PuiseuxPoly(o);
    adopt(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() && j != o.terms_.end()) {
      if (i->first > j->first) merged.push_back(std::move(*i++));
      else if (j->first > i->first) merged.push_back(*j++);
      else {
        CoeffPoly c = std::move(i->second);
        c += j->second;
        if (!c.is_zero()) merged.emplace_back(std::move(i->first), std::move(c));
        ++i;
        ++j;
      }
    }
    for (; i != terms_.end(); ++i) merged.push_back(std::move(*i));
    for (; j != o.terms_.end(); ++j) merged.push_back(*j);
    terms_ = std::move(merged);
    return *this;
  }
  PuiseuxPoly& operator-=(const PuiseuxPoly& o) { return *this += -o; }

  friend PuiseuxPoly operator+(PuiseuxPoly a, const PuiseuxPoly& b) { return a += b; }
  friend PuiseuxPoly operator-(PuiseuxPoly a, const PuiseuxPoly& b) { return a -= b; }
  friend PuiseuxPoly operator-(PuiseuxPoly a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }

  friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly r;
    r.vars_ = merged(a.vars_, b.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    std::map<Rational, CoeffPoly, std::greater<>> acc;
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        auto [it, fresh] = acc.try_emplace(ea + eb);
        it->second += ca * cb;
      }
    r.terms_.reserve(acc.size());
    for (auto& [e, c] : acc)
      if (!c.is_zero()) r.terms_.emplace_back(e, std::move(c));
    return r;
  }
  PuiseuxPoly& operator*=(const PuiseuxPoly& o) { return *this = *this * o; }

  friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.terms_ == b.terms_; }

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto& [e, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + c.str() + ")";
      if (!e.is_zero()) out += "*t^" + (e.is_integer() ? e.str() : "(" + e.str() + ")");
    }
    return out;
  }

 private:
  static VarsPtr merged(const VarsPtr& a, const VarsPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (!same_variables(a, b)) throw std::invalid_argument("PuiseuxPoly: mismatched variable sets");
    return a;
  }
  void adopt(const PuiseuxPoly& o) { vars_ = merged(vars_, o.vars_); }

  VarsPtr vars_;
  std::vector<Term> terms_;
};

}  // namespace troptree
