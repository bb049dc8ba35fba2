#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bayesbias {

/// Exact rational number p/q kept in canonical form (q > 0, gcd(|p|, q) = 1).
///
/// Every probability and utility in the library is a Rational; there is no
/// floating point anywhere. Numerator and denominator are arbitrary precision.
class Rational {
 public:
  using Integer = boost::multiprecision::cpp_int;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT: implicit by intent
  Rational(const Integer& numerator, const Integer& denominator) {
    if (denominator == 0) {
      throw std::domain_error("Rational: zero denominator");
    }
    value_ = denominator < 0 ? Backend(Integer(-numerator), Integer(-denominator)) : Backend(numerator, denominator);
  }

  [[nodiscard]] Integer numerator() const {
    return boost::multiprecision::numerator(value_);
  }
  [[nodiscard]] Integer denominator() const {
    return boost::multiprecision::denominator(value_);
  }

  [[nodiscard]] bool is_zero() const { return value_ == 0; }
  [[nodiscard]] bool is_positive() const { return value_ > 0; }
  [[nodiscard]] bool is_negative() const { return value_ < 0; }
  [[nodiscard]] bool is_integer() const { return denominator() == 1; }

  /// "p/q", or "p" when q = 1. The sign is carried by the numerator.
  [[nodiscard]] std::string to_string() const {
    const Integer q = denominator();
    std::string s = numerator().str();
    if (q != 1) {
      s += '/';
      s += q.str();
    }
    return s;
  }

  /// Parses the canonical text form only: "p/q" with q > 1 and gcd 1, or "p".
  /// No leading '+', no leading zeros, no "-0", no whitespace.
  static std::optional<Rational> parse(std::string_view text) {
    const auto slash = text.find('/');
    const std::string_view num_text = text.substr(0, slash);
    auto num = parse_integer(num_text, /*allow_sign=*/true);
    if (!num) return std::nullopt;
    if (slash == std::string_view::npos) return Rational(*num, 1);
    auto den = parse_integer(text.substr(slash + 1), /*allow_sign=*/false);
    if (!den || *den <= 1) return std::nullopt;
    if (boost::multiprecision::gcd(*num, *den) != 1) return std::nullopt;
    return Rational(*num, *den);
  }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(-a.numerator(), a.denominator()); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.numerator() == b.numerator() && a.denominator() == b.denominator();
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    // Denominators are positive, so cross-multiplication preserves order.
    const Integer lhs = a.numerator() * b.denominator();
    const Integer rhs = b.numerator() * a.denominator();
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  using Backend = boost::multiprecision::cpp_rational;

  static std::optional<Integer> parse_integer(std::string_view s, bool allow_sign) {
    bool negative = false;
    if (allow_sign && !s.empty() && s.front() == '-') {
      negative = true;
      s.remove_prefix(1);
    }
    if (s.empty() || s.size() > 4096) return std::nullopt;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
    }
    if (s.size() > 1 && s.front() == '0') return std::nullopt;
    if (negative && s == "0") return std::nullopt;
    Integer v{std::string(s)};
    return negative ? Integer(-v) : v;
  }

  Backend value_{0};
};

/// Exact three-way comparison.
inline std::strong_ordering rat_compare(const Rational& a, const Rational& b) {
  return a <=> b;
}

}  // namespace bayesbias
