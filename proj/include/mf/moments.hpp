#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mf/rational.hpp"
#include "mf/special_numbers.hpp"

namespace mf {

/// Independent random atoms.
///   Uniform   U ~ uniform(0,1)
///   ExpGamma  X ~ gamma(shape 1, rate 1)
///   Mixture   M | u ~ gamma(shape u, rate 1), u ~ uniform(0,1)
enum class AtomKind { Uniform, ExpGamma, Mixture };

char atom_symbol(AtomKind kind);

struct Atom {
  AtomKind kind = AtomKind::Uniform;
  int id = 1;

  friend auto operator<=>(const Atom&, const Atom&) = default;
  std::string str() const { return atom_symbol(kind) + std::to_string(id); }
};

/// coefficient * product of distinct atoms; no atoms means a constant.
struct Term {
  Rational coefficient;
  std::vector<Atom> atoms;

  bool is_constant() const { return atoms.empty(); }
};

/// An atom is shared between terms or repeated within one term.
class ExactnessError : public std::invalid_argument {
 public:
  ExactnessError(const Atom& atom, const std::string& what)
      : std::invalid_argument(what), atom_(atom) {}
  const Atom& atom() const { return atom_; }

 private:
  Atom atom_;
};

/// Affine combination of atom-disjoint products of independent atoms.
///
/// Every atom appears in at most one term and at most once inside it, which
/// is what lets E[e^n] factor over a multinomial expansion. Constant terms
/// are merged into one trailing term; other terms keep their given order.
class RVExpression {
 public:
  /// The constant 0.
  RVExpression() = default;
  /// Throws ExactnessError when the atom-disjointness guard fails.
  explicit RVExpression(std::vector<Term> terms);

  static RVExpression constant(const Rational& c);
  /// A_1 + ... + A_count for one atom kind; count = 0 gives the constant 0.
  static RVExpression sum_of(AtomKind kind, int count);

  const std::vector<Term>& terms() const { return terms_; }
  std::vector<Atom> atoms() const;

  /// Text accepted back by parse_expression.
  std::string str() const;

  /// Concatenate terms; the guard applies to the result.
  friend RVExpression operator+(const RVExpression& a, const RVExpression& b);
  friend RVExpression operator+(const RVExpression& a, const Rational& c);

 private:
  std::vector<Term> terms_;
};

/// Exact moments of RVExpressions.
///
/// Atom moments: E[U^m] = 1/(m+1), E[X^m] = m!, and
/// E[M^m] = int_0^1 u(u+1)...(u+m-1) du = sum_l |S1(m,l)| / (l+1).
/// The mixture formula reads S1 from the table store; nothing else does.
class MomentEngine {
 public:
  explicit MomentEngine(const TableStore& tables) : tables_(&tables) {}

  Rational atom_moment(AtomKind kind, int m) const;

  /// E[e^n] via sum over weak compositions (l_0..l_r) of n, in lexicographic
  /// order, of n!/prod l_j! * prod_j coeff_j^{l_j} * prod_{atoms in j} E[A^{l_j}].
  Rational moment(const RVExpression& e, int n) const;

 private:
  const TableStore* tables_;
};

/// n! [t^n] -t / ((1-t) log(1-t)) for n = 0..m_max: mixture moments read off
/// the moment generating function, independent of the closed form.
std::vector<Rational> mixture_moments_series(int m_max);

/// Syntax error in the expression language, with a 0-based character offset.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar (whitespace-insensitive):
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := rational ['*' factor ('*' factor)*] | factor ('*' factor)*
///   factor := ('U'|'X'|'M') positive-integer
///   rational := digits ['/' digits]
/// Throws ParseError for syntax errors and ExactnessError for shared or
/// repeated atoms.
RVExpression parse_expression(std::string_view text);

}  // namespace mf
