#ifndef DYADIC_RATIONAL_HPP
#define DYADIC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include "dyadic/error.hpp"

namespace dyadic {

/// Exact rational number in canonical form (gcd 1, positive denominator).
class Rational {
 public:
  using integer_type = boost::multiprecision::cpp_int;
  using value_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den) {
    if (den == 0) throw input_error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    value_ = value_type(integer_type(num), integer_type(den));
  }
  explicit Rational(value_type v) : value_(std::move(v)) {}

  /// Parses "p/q" or "p" (optional leading sign on p).
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
      return s;
    };
    text = trim(text);
    auto slash = text.find('/');
    auto num_text = trim(text.substr(0, slash));
    if (!is_integer_literal(num_text)) {
      throw input_error("malformed rational '" + std::string(text) + "'");
    }
    if (num_text.front() == '+') num_text.remove_prefix(1);
    integer_type num{std::string(num_text)};
    integer_type den = 1;
    if (slash != std::string_view::npos) {
      auto den_text = trim(text.substr(slash + 1));
      if (!is_integer_literal(den_text) || den_text.front() == '-' || den_text.front() == '+') {
        throw input_error("malformed rational '" + std::string(text) + "'");
      }
      den = integer_type{std::string(den_text)};
      if (den == 0) throw input_error("rational with zero denominator: '" + std::string(text) + "'");
    }
    return Rational(value_type(num, den));
  }

  /// 2^-k.
  static Rational inverse_power_of_two(std::uint32_t k) {
    integer_type den = 1;
    den <<= k;
    return Rational(value_type(integer_type(1), den));
  }

  const value_type& value() const { return value_; }
  integer_type numerator() const { return boost::multiprecision::numerator(value_); }
  integer_type denominator() const { return boost::multiprecision::denominator(value_); }

  int sign() const { return value_.sign(); }
  bool is_zero() const { return value_.is_zero(); }
  bool is_integer() const { return denominator() == 1; }

  std::string str() const {
    if (is_integer()) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  Rational operator-() const { return Rational(value_type(-value_)); }
  Rational abs() const { return sign() < 0 ? -*this : *this; }

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw input_error("division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = a.value_.compare(b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  }

  value_type value_{0};
};

inline Rational midpoint(const Rational& a, const Rational& b) { return (a + b) / Rational(2); }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// If r = 2^m for some integer m (r > 0), returns true and sets m.
inline bool is_power_of_two(const Rational& r, long long* exponent = nullptr) {
  if (r.sign() <= 0) return false;
  auto num = r.numerator();
  auto den = r.denominator();
  auto single_bit = [](const Rational::integer_type& v) {
    return v > 0 && (v & (v - 1)) == 0;
  };
  if (num != 1 && den != 1) return false;
  if (!single_bit(num) || !single_bit(den)) return false;
  if (exponent) {
    long long m = num == 1 ? -static_cast<long long>(boost::multiprecision::msb(den))
                           : static_cast<long long>(boost::multiprecision::msb(num));
    *exponent = m;
  }
  return true;
}

}  // namespace dyadic

template <>
struct std::hash<dyadic::Rational> {
  std::size_t operator()(const dyadic::Rational& r) const noexcept {
    return std::hash<std::string>{}(r.str());
  }
};

#endif  // DYADIC_RATIONAL_HPP
