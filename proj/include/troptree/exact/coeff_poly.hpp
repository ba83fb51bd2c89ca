#pragma once

// Multivariate polynomials with rational coefficients over a named, finite
// variable set. A polynomial without a variable set is a plain rational
// constant and combines with polynomials over any set.

#include "troptree/exact/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace troptree {

class VariableSet {
 public:
  explicit VariableSet(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<std::uint32_t>(i)).second)
        throw std::invalid_argument("VariableSet: duplicate variable '" + names_[i] + "'");
    }
  }

  [[nodiscard]] std::size_t size() const { return names_.size(); }
  [[nodiscard]] const std::string& name(std::uint32_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<std::string>& names() const { return names_; }
  [[nodiscard]] std::optional<std::uint32_t> find(const std::string& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  [[nodiscard]] std::uint32_t index(const std::string& n) const {
    auto i = find(n);
    if (!i) throw std::out_of_range("VariableSet: unknown variable '" + n + "'");
    return *i;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

using VarsPtr = std::shared_ptr<const VariableSet>;

inline VarsPtr make_variables(std::vector<std::string> names) {
  return std::make_shared<const VariableSet>(std::move(names));
}

inline bool same_variables(const VarsPtr& a, const VarsPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->names() == b->names();
}

// Sparse exponent vector, sorted by variable index, no zero exponents.
class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;

  Monomial() = default;
  static Monomial variable(std::uint32_t var, std::uint32_t power = 1) {
    Monomial m;
    if (power > 0) m.factors_.emplace_back(var, power);
    return m;
  }
  static Monomial from_factors(std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    Monomial m;
    for (auto& [v, p] : factors) {
      if (p == 0) continue;
      if (!m.factors_.empty() && m.factors_.back().first == v)
        m.factors_.back().second += p;
      else
        m.factors_.emplace_back(v, p);
    }
    return m;
  }

  [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
  [[nodiscard]] bool is_one() const { return factors_.empty(); }
  [[nodiscard]] std::uint32_t total_degree() const {
    std::uint32_t d = 0;
    for (auto& f : factors_) d += f.second;
    return d;
  }
  [[nodiscard]] std::uint32_t degree_in(std::uint32_t var) const {
    for (auto& f : factors_)
      if (f.first == var) return f.second;
    return 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin(), j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first < j->first) r.factors_.push_back(*i++);
      else if (j->first < i->first) r.factors_.push_back(*j++);
      else {
        r.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    r.factors_.insert(r.factors_.end(), i, a.factors_.end());
    r.factors_.insert(r.factors_.end(), j, b.factors_.end());
    return r;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.factors_ <=> b.factors_; }

  [[nodiscard]] std::string str(const VariableSet* vars) const {
    if (factors_.empty()) return "1";
    std::string out;
    for (auto& [v, p] : factors_) {
      if (!out.empty()) out += "*";
      out += vars ? vars->name(v) : ("v" + std::to_string(v));
      if (p > 1) out += "^" + std::to_string(p);
    }
    return out;
  }

 private:
  std::vector<Factor> factors_;
};

class CoeffPoly {
 public:
  using Term = std::pair<Monomial, Rational>;

  CoeffPoly() = default;
  CoeffPoly(Rational c) {  // NOLINT(implicit)
    if (!c.is_zero()) terms_.emplace_back(Monomial{}, std::move(c));
  }
  template <std::integral I>
  CoeffPoly(I c) : CoeffPoly(Rational(c)) {}  // NOLINT(implicit)

  static CoeffPoly variable(const VarsPtr& vars, const std::string& name) {
    if (!vars) throw std::invalid_argument("CoeffPoly::variable needs a variable set");
    CoeffPoly p;
    p.vars_ = vars;
    p.terms_.emplace_back(Monomial::variable(vars->index(name)), Rational(1));
    return p;
  }
  static CoeffPoly from_terms(VarsPtr vars, std::vector<Term> terms) {
    CoeffPoly p;
    p.vars_ = std::move(vars);
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
    for (auto& t : terms) {
      if (!p.terms_.empty() && p.terms_.back().first == t.first)
        p.terms_.back().second += t.second;
      else
        p.terms_.push_back(std::move(t));
      if (p.terms_.back().second.is_zero()) p.terms_.pop_back();
    }
    return p;
  }

  [[nodiscard]] const VarsPtr& variables() const { return vars_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] std::size_t term_count() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  [[nodiscard]] Rational constant_value() const {
    if (!is_constant()) throw std::logic_error("CoeffPoly: not a constant");
    return terms_.empty() ? Rational(0) : terms_[0].second;
  }

  // Homogeneous of the given total degree (the zero polynomial is homogeneous of every degree).
  [[nodiscard]] bool is_homogeneous(std::uint32_t degree) const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const Term& t) { return t.first.total_degree() == degree; });
  }
  [[nodiscard]] std::optional<std::uint32_t> homogeneous_degree() const {
    if (terms_.empty()) return std::nullopt;
    auto d = terms_.front().first.total_degree();
    return is_homogeneous(d) ? std::optional(d) : std::nullopt;
  }

  // Substitutes every variable by the rational returned from `value(name)`.
  template <class F>
  [[nodiscard]] Rational evaluate(F&& value) const {
    Rational sum;
    for (auto& [mono, c] : terms_) {
      Rational prod = c;
      for (auto& [v, p] : mono.factors()) {
        Rational x = value(vars_->name(v));
        for (std::uint32_t k = 0; k < p; ++k) prod *= x;
      }
      sum += prod;
    }
    return sum;
  }

  CoeffPoly& operator+=(const CoeffPoly& o) {
    if (&o == this) return *this += CoeffPoly(o);
    adopt(o);
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    auto i = terms_.begin();
    auto j = o.terms_.begin();
    while (i != terms_.end() && j != o.terms_.end()) {
      if (i->first < j->first) merged.push_back(std::move(*i++));
      else if (j->first < i->first) merged.push_back(*j++);
      else {
        Rational c = i->second + j->second;
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
  CoeffPoly& operator-=(const CoeffPoly& o) { return *this += -o; }

  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  friend CoeffPoly operator-(CoeffPoly a) {
    for (auto& t : a.terms_) t.second = -t.second;
    return a;
  }

  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
    CoeffPoly r;
    r.vars_ = merged_variables(a.vars_, b.vars_);
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 && a.terms_[0].first.is_one()) return scaled(b, a.terms_[0].second, r.vars_);
    if (b.terms_.size() == 1 && b.terms_[0].first.is_one()) return scaled(a, b.terms_[0].second, r.vars_);
    std::map<Monomial, Rational> acc;
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) acc[ma * mb] += ca * cb;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.terms_.emplace_back(m, std::move(c));
    return r;
  }
  CoeffPoly& operator*=(const CoeffPoly& o) { return *this = *this * o; }

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
    if (a.terms_ != b.terms_) return false;
    // Constants compare by value; symbolic terms must live over the same names.
    bool symbolic = !a.is_constant();
    return !symbolic || same_variables(a.vars_, b.vars_);
  }

  [[nodiscard]] std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string cs = c.str();
      bool neg = c.sign() < 0;
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      std::string mag = neg ? cs.substr(1) : cs;
      if (m.is_one()) out += mag;
      else if (mag == "1") out += m.str(vars_.get());
      else out += mag + "*" + m.str(vars_.get());
    }
    return out;
  }

 private:
  static VarsPtr merged_variables(const VarsPtr& a, const VarsPtr& b) {
    if (!a) return b;
    if (!b) return a;
    if (!same_variables(a, b)) throw std::invalid_argument("CoeffPoly: mismatched variable sets");
    return a;
  }
  void adopt(const CoeffPoly& o) { vars_ = merged_variables(vars_, o.vars_); }
  static CoeffPoly scaled(const CoeffPoly& p, const Rational& c, VarsPtr vars) {
    CoeffPoly r;
    r.vars_ = std::move(vars);
    r.terms_.reserve(p.terms_.size());
    for (auto& [m, x] : p.terms_) r.terms_.emplace_back(m, x * c);
    return r;
  }

  VarsPtr vars_;
  std::vector<Term> terms_;
};

}  // namespace troptree
