#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mf {

using BigInt = mpz_class;

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every constructor canonicalizes,
/// so two equal values always compare equal field by field.
class Rational {
 public:
  Rational() = default;

  template <std::signed_integral I>
  Rational(I value) : value_(static_cast<long>(value)) {}

  template <std::unsigned_integral I>
  Rational(I value) : value_(static_cast<unsigned long>(value)) {}

  Rational(const BigInt& value) : value_(value) {}

  /// Throws std::domain_error when `den` is zero.
  Rational(const BigInt& num, const BigInt& den);

  /// Parses "p", "-p" or "p/q" (surrounding whitespace allowed).
  /// Throws std::invalid_argument on malformed text or a zero denominator.
  static Rational parse(std::string_view text);

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  double to_double() const { return value_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  /// Integer power; negative exponents require a nonzero base. 0^0 = 1.
  Rational pow(int exponent) const;

  Rational operator-() const { return Rational(mpq_class(-value_)); }

  Rational& operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  Rational& operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
  }
  Rational& operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
  }
  /// Throws std::domain_error on division by zero.
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return value_; }

 private:
  explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

BigInt factorial_int(int n);
inline Rational factorial(int n) { return Rational(factorial_int(n)); }

/// C(n, k) for n >= 0; zero when k < 0 or k > n.
BigInt binomial_int(int n, int k);
inline Rational binomial(int n, int k) { return Rational(binomial_int(n, k)); }

}  // namespace mf
