#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "mf/poly.hpp"
#include "mf/rational.hpp"

namespace mf {

/// Raised when a series operation's precondition on the constant term fails
/// (inverting a non-unit, exp of a series with nonzero constant term, ...).
class SeriesError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Multiplicative inverse of a ring element that must be a unit.
inline Rational inverse_unit(const Rational& c) {
  if (c.is_zero()) throw SeriesError("series: constant term is not a unit");
  return Rational(1) / c;
}

inline Poly inverse_unit(const Poly& c) {
  if (c.is_zero() || !c.is_constant()) throw SeriesError("series: constant term is not a unit");
  return Poly(Rational(1) / c.coeff(0), c.var());
}

/// Truncated formal power series sum_{j <= order} c_j t^j over R (Rational
/// or Poly). Coefficients up to `order` are exact; nothing above is tracked.
template <class R>
class Series {
 public:
  using coefficient_type = R;

  explicit Series(int order) : coeffs_(checked_size(order)), order_(order) {}

  Series(std::vector<R> coeffs, int order) : coeffs_(std::move(coeffs)), order_(order) {
    coeffs_.resize(checked_size(order));
  }

  static Series one(int order) { return monomial(R{Rational(1)}, 0, order); }

  static Series monomial(const R& c, int power, int order) {
    Series s(order);
    if (power >= 0 && power <= order) s.coeffs_[power] = c;
    return s;
  }

  int order() const { return order_; }
  const std::vector<R>& coeffs() const { return coeffs_; }

  const R& operator[](int j) const {
    if (j < 0 || j > order_) {
      throw std::out_of_range("series: coefficient t^" + std::to_string(j) +
                              " beyond truncation order " + std::to_string(order_));
    }
    return coeffs_[j];
  }

  Series truncate(int order) const {
    if (order > order_) throw std::invalid_argument("series: cannot extend truncation order");
    return Series(std::vector<R>(coeffs_.begin(), coeffs_.begin() + order + 1), order);
  }

  /// Division by t; requires a zero constant term. Order drops by one.
  Series shift_down() const {
    if (!is_zero_element(coeffs_[0])) throw SeriesError("series: division by t with nonzero constant term");
    if (order_ == 0) throw SeriesError("series: division by t of an order-0 series");
    return Series(std::vector<R>(coeffs_.begin() + 1, coeffs_.end()), order_ - 1);
  }

  /// Multiplication by t. Order grows by one since the new top coefficient is known.
  Series shift_up() const {
    std::vector<R> c;
    c.reserve(coeffs_.size() + 1);
    c.push_back(R{});
    c.insert(c.end(), coeffs_.begin(), coeffs_.end());
    return Series(std::move(c), order_ + 1);
  }

  Series operator-() const {
    Series out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  friend Series operator+(const Series& a, const Series& b) {
    const int order = std::min(a.order_, b.order_);
    Series out(order);
    for (int j = 0; j <= order; ++j) out.coeffs_[j] = a.coeffs_[j] + b.coeffs_[j];
    return out;
  }

  friend Series operator-(const Series& a, const Series& b) { return a + (-b); }

  /// Cauchy product.
  friend Series operator*(const Series& a, const Series& b) {
    const int order = std::min(a.order_, b.order_);
    Series out(order);
    for (int i = 0; i <= order; ++i) {
      if (is_zero_element(a.coeffs_[i])) continue;
      for (int j = 0; i + j <= order; ++j) {
        if (is_zero_element(b.coeffs_[j])) continue;
        out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return out;
  }

  friend Series operator*(Series a, const Rational& s) {
    for (auto& c : a.coeffs_) c = c * s;
    return a;
  }

  friend Series operator/(Series a, const Rational& s) {
    for (auto& c : a.coeffs_) c = c / s;
    return a;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static std::size_t checked_size(int order) {
    if (order < 0) throw std::invalid_argument("series: negative truncation order");
    return static_cast<std::size_t>(order) + 1;
  }

  static bool is_zero_element(const Rational& c) { return c.is_zero(); }
  static bool is_zero_element(const Poly& c) { return c.is_zero(); }

  std::vector<R> coeffs_;
  int order_;
};

template <class R>
Series<R> series_add(const Series<R>& a, const Series<R>& b) {
  return a + b;
}

template <class R>
Series<R> series_mul(const Series<R>& a, const Series<R>& b) {
  return a * b;
}

/// Reciprocal; the constant term must be a unit of R.
template <class R>
Series<R> series_inv(const Series<R>& a) {
  const int order = a.order();
  const R c0_inv = inverse_unit(a[0]);
  std::vector<R> out(static_cast<std::size_t>(order) + 1);
  out[0] = c0_inv;
  for (int n = 1; n <= order; ++n) {
    R acc{};
    for (int k = 1; k <= n; ++k) acc += a[k] * out[n - k];
    out[n] = -(acc * c0_inv);
  }
  return Series<R>(std::move(out), order);
}

/// exp(a) for a with zero constant term, via n b_n = sum_k k a_k b_{n-k}.
template <class R>
Series<R> series_exp(const Series<R>& a) {
  if (!(a[0] == R{})) throw SeriesError("series_exp: constant term must be zero");
  const int order = a.order();
  std::vector<R> out(static_cast<std::size_t>(order) + 1);
  out[0] = R{Rational(1)};
  for (int n = 1; n <= order; ++n) {
    R acc{};
    for (int k = 1; k <= n; ++k) acc += a[k] * out[n - k] * Rational(k);
    out[n] = acc / Rational(n);
  }
  return Series<R>(std::move(out), order);
}

/// log(1 + a) for a with zero constant term, integrating a' / (1 + a).
template <class R>
Series<R> series_log1p(const Series<R>& a) {
  if (!(a[0] == R{})) throw SeriesError("series_log1p: constant term must be zero");
  const int order = a.order();
  Series<R> out(order);
  if (order == 0) return out;
  std::vector<R> deriv(static_cast<std::size_t>(order));
  for (int j = 1; j <= order; ++j) deriv[j - 1] = a[j] * Rational(j);
  const Series<R> quotient = Series<R>(std::move(deriv), order - 1) *
                             series_inv(Series<R>::one(order - 1) + a.truncate(order - 1));
  std::vector<R> integrated(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order; ++j) integrated[j] = quotient[j - 1] / Rational(j);
  return Series<R>(std::move(integrated), order);
}

/// a^r for r >= 0 by repeated squaring.
template <class R>
Series<R> series_pow_int(const Series<R>& a, int r) {
  if (r < 0) throw std::invalid_argument("series_pow_int: negative exponent");
  Series<R> result = Series<R>::one(a.order());
  Series<R> base = a;
  while (r > 0) {
    if (r & 1) result = result * base;
    r >>= 1;
    if (r > 0) base = base * base;
  }
  return result;
}

/// Coefficient of t^n/n!, i.e. n! times the t^n coefficient.
template <class R>
R egf_coefficient(const Series<R>& s, int n) {
  return s[n] * factorial(n);
}

}  // namespace mf
