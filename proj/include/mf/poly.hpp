#pragma once

#include <string>
#include <vector>

#include "mf/rational.hpp"

namespace mf {

/// Role of a polynomial's variable. Only used for printing and for catching
/// accidental mixing of, say, a lambda-polynomial with an x-polynomial.
enum class Var { Lambda, X, T };

/// Printable variable name; lambda is spelled `l`.
char var_symbol(Var v);

/// Dense univariate polynomial over Rational, lowest power first.
///
/// Canonical form: no trailing zero coefficients, so the zero polynomial has
/// an empty coefficient list. Constants (degree <= 0) combine with any
/// variable role; two non-constant polynomials must share the same role.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Var var) : var_(var) {}
  explicit Poly(const Rational& constant, Var var = Var::Lambda);
  explicit Poly(std::vector<Rational> coeffs, Var var = Var::Lambda);

  static Poly monomial(const Rational& c, int power, Var var = Var::Lambda);
  static Poly variable(Var var) { return monomial(Rational(1), 1, var); }

  const std::vector<Rational>& coeffs() const { return coeffs_; }
  /// Coefficient of var^power; zero outside the stored range.
  Rational coeff(int power) const;
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Var var() const { return var_; }

  /// Horner evaluation.
  Rational eval(const Rational& v) const;

  /// "1 - 3*l + 2*l^2"; "0" for the zero polynomial.
  std::string str() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& s);
  /// Throws std::domain_error for s == 0.
  Poly& operator/=(const Rational& s);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rational& s) { return a /= s; }

  /// Coefficient equality. Variable roles are compared only when both sides
  /// are non-constant.
  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void normalize();
  Var combined_var(const Poly& rhs) const;

  std::vector<Rational> coeffs_;
  Var var_ = Var::Lambda;
};

inline Rational poly_eval(const Poly& p, const Rational& v) { return p.eval(v); }

}  // namespace mf
