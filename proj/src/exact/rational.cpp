#include "mf/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace mf {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
  }
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  BigInt num;
  BigInt den = 1;
  const bool ok = slash == std::string_view::npos
                      ? parse_integer(s, num)
                      : parse_integer(trim(s.substr(0, slash)), num) &&
                            parse_integer(trim(s.substr(slash + 1)), den);
  if (!ok) throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational Rational::pow(int exponent) const {
  if (exponent < 0) {
    if (is_zero()) throw std::domain_error("Rational: zero to a negative power");
    return Rational(1) / pow(-exponent);
  }
  BigInt num;
  BigInt den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= rhs.value_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt factorial_int(int n) {
  if (n < 0) throw std::domain_error("factorial of a negative number");
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

BigInt binomial_int(int n, int k) {
  if (n < 0) throw std::domain_error("binomial with negative n");
  if (k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

}  // namespace mf
