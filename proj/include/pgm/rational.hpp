#pragma once

#include <cstdint>
#include <compare>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace pgm {

// Exact rational number over 64-bit integers. Always stored reduced with a
// positive denominator, so equality is plain field comparison. Intermediate
// products go through 128-bit arithmetic; results that do not fit back into
// 64 bits throw std::overflow_error rather than wrapping.
//
// Probabilities in this codebase are Rationals end to end; doubles appear
// only at the display boundary.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)

  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    num_ = n;
    den_ = d;
  }

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  Rational operator-() const { return Rational(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    // a/b + c/d with the usual gcd trick to keep intermediates small.
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const i128 lhs = i128(a.num_) * (b.den_ / g);
    const i128 rhs = i128(b.num_) * (a.den_ / g);
    const i128 den = i128(a.den_ / g) * b.den_;
    return make_checked(lhs + rhs, den);
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + (-b);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    const std::int64_t g1 = std::gcd(a.num_ < 0 ? -a.num_ : a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_ < 0 ? -b.num_ : b.num_, a.den_);
    const i128 num = i128(a.num_ / g1) * (b.num_ / g2);
    const i128 den = i128(a.den_ / g2) * (b.den_ / g1);
    return make_checked(num, den);
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return a * Rational(b.den_, b.num_);
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const i128 lhs = i128(a.num_) * b.den_;
    const i128 rhs = i128(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // "2/3" for proper fractions, "2" for integers.
  std::string to_string() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) {
      s += '/';
      s += std::to_string(den_);
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

  // Exact base-10 conversion: "0.33" -> 33/100, ".5" -> 1/2, "2" -> 2.
  // Never passes through floating point; every literal is representable.
  static Rational from_decimal(std::string_view text);

  // Parses either the p/q form or a decimal literal.
  static Rational parse(std::string_view text);

 private:
  using i128 = __int128;

  static Rational make_checked(i128 num, i128 den) {
    const i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX) {
      throw std::overflow_error("rational arithmetic overflow");
    }
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      const i128 t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline Rational Rational::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool any_digit = false;
  bool seen_dot = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("malformed decimal: " + std::string(text));
      seen_dot = true;
      continue;
    }
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed decimal: " + std::string(text));
    }
    if (num > (INT64_MAX - 9) / 10 || (seen_dot && den > INT64_MAX / 10)) {
      throw std::overflow_error("decimal literal too long: " + std::string(text));
    }
    num = num * 10 + (c - '0');
    if (seen_dot) den *= 10;
    any_digit = true;
  }
  if (!any_digit) throw std::invalid_argument("malformed decimal: " + std::string(text));
  return Rational(negative ? -num : num, den);
}

inline Rational Rational::parse(std::string_view text) {
  const std::size_t slash = text.find('/');
  if (slash == std::string_view::npos) return from_decimal(text);
  const std::string_view num_part = text.substr(0, slash);
  const std::string_view den_part = text.substr(slash + 1);
  const Rational n = from_decimal(num_part);
  const Rational d = from_decimal(den_part);
  if (n.denominator() != 1 || d.denominator() != 1) {
    throw std::invalid_argument("p/q form requires integers: " + std::string(text));
  }
  if (d.numerator() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return n / d;
}

}  // namespace pgm
