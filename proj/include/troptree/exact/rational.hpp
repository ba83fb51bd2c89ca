#pragma once

// Exact rational numbers over GMP. Values are always kept in lowest terms
// with a positive denominator; nothing here ever rounds.

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace troptree {

class Rational {
 public:
  Rational() = default;

  template <std::integral I>
  Rational(I value) : v_(static_cast<long>(value)) {}  // NOLINT(implicit)

  Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }

  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  // Accepts "p", "p/q" and finite decimals such as "-1.25" (converted exactly).
  static Rational parse(std::string_view text);

  [[nodiscard]] std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  [[nodiscard]] mpz_class numerator() const { return v_.get_num(); }
  [[nodiscard]] mpz_class denominator() const { return v_.get_den(); }
  [[nodiscard]] const mpq_class& raw() const { return v_; }

  [[nodiscard]] int sign() const { return sgn(v_); }
  [[nodiscard]] bool is_zero() const { return sgn(v_) == 0; }
  [[nodiscard]] bool is_integer() const { return v_.get_den() == 1; }
  [[nodiscard]] double to_double() const { return v_.get_d(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.v_, b.v_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class v_{0};
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto to_mpz = [](std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_int(num) || den.empty() || !is_int(den) || den.front() == '-' || den.front() == '+')
      return fail();
    mpz_class d = to_mpz(den);
    if (d == 0) return fail();
    return Rational(to_mpz(num), d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    std::string_view digits = whole;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (digits.empty() && frac.empty()) return fail();
    if (!digits.empty() && !is_int(digits)) return fail();
    if (!frac.empty() && (!is_int(frac) || frac.front() == '-' || frac.front() == '+')) return fail();
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class num = (digits.empty() ? mpz_class(0) : to_mpz(digits)) * scale +
                    (frac.empty() ? mpz_class(0) : to_mpz(frac));
    if (negative) num = -num;
    return Rational(num, scale);
  }
  if (!is_int(text)) return fail();
  return Rational(to_mpz(text), mpz_class(1));
}

// Rational extended by the two signed infinities; used for degree(0) and val(0).
class ExtRational {
 public:
  enum class Kind : std::int8_t { NegInf = -1, Finite = 0, PosInf = 1 };

  ExtRational(Rational v) : kind_(Kind::Finite), value_(std::move(v)) {}  // NOLINT(implicit)
  static ExtRational neg_infinity() { return ExtRational(Kind::NegInf); }
  static ExtRational pos_infinity() { return ExtRational(Kind::PosInf); }

  [[nodiscard]] bool is_finite() const { return kind_ == Kind::Finite; }
  [[nodiscard]] Kind kind() const { return kind_; }
  [[nodiscard]] const Rational& value() const {
    if (!is_finite()) throw std::logic_error("ExtRational: infinite value has no rational part");
    return value_;
  }
  [[nodiscard]] std::string str() const {
    switch (kind_) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return value_.str();
    }
  }

  ExtRational operator-() const {
    if (kind_ == Kind::NegInf) return pos_infinity();
    if (kind_ == Kind::PosInf) return neg_infinity();
    return ExtRational(-value_);
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }
  friend std::strong_ordering operator<=>(const ExtRational& a, const ExtRational& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    return a.value_ <=> b.value_;
  }
  friend std::ostream& operator<<(std::ostream& os, const ExtRational& r) { return os << r.str(); }

 private:
  explicit ExtRational(Kind k) : kind_(k) {}
  Kind kind_;
  Rational value_;
};

}  // namespace troptree

template <>
struct std::hash<troptree::Rational> {
  std::size_t operator()(const troptree::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};
