#include "mf/poly.hpp"

#include <stdexcept>

namespace mf {

char var_symbol(Var v) {
  switch (v) {
    case Var::Lambda: return 'l';
    case Var::X: return 'x';
    case Var::T: return 't';
  }
  return '?';
}

Poly::Poly(const Rational& constant, Var var) : var_(var) {
  if (!constant.is_zero()) coeffs_.push_back(constant);
}

Poly::Poly(std::vector<Rational> coeffs, Var var) : coeffs_(std::move(coeffs)), var_(var) {
  normalize();
}

Poly Poly::monomial(const Rational& c, int power, Var var) {
  if (power < 0) throw std::invalid_argument("Poly::monomial: negative power");
  Poly p(var);
  if (c.is_zero()) return p;
  p.coeffs_.assign(static_cast<std::size_t>(power) + 1, Rational());
  p.coeffs_.back() = c;
  return p;
}

Rational Poly::coeff(int power) const {
  if (power < 0 || power > degree()) return Rational();
  return coeffs_[static_cast<std::size_t>(power)];
}

Rational Poly::eval(const Rational& v) const {
  Rational acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= v;
    acc += *it;
  }
  return acc;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  const char sym = var_symbol(var_);
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    const Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    const bool unit = mag == Rational(1);
    if (i == 0) {
      out += mag.str();
      continue;
    }
    if (!unit) out += mag.str() + "*";
    out += sym;
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Var Poly::combined_var(const Poly& rhs) const {
  if (is_constant()) return rhs.is_constant() ? var_ : rhs.var_;
  if (!rhs.is_constant() && rhs.var_ != var_) {
    throw std::invalid_argument(std::string("Poly: mixing variables '") + var_symbol(var_) +
                                "' and '" + var_symbol(rhs.var_) + "'");
  }
  return var_;
}

Poly& Poly::operator+=(const Poly& rhs) {
  var_ = combined_var(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  var_ = combined_var(rhs);
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Poly& rhs) {
  const Var v = combined_var(rhs);
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    var_ = v;
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  var_ = v;
  normalize();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= s;
  return *this;
}

Poly& Poly::operator/=(const Rational& s) {
  if (s.is_zero()) throw std::domain_error("Poly: division by zero");
  for (auto& c : coeffs_) c /= s;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.coeffs_ != b.coeffs_) return false;
  return a.is_constant() || a.var_ == b.var_;
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

}  // namespace mf
