#include <set>

#include "mf/moments.hpp"

namespace mf {

char atom_symbol(AtomKind kind) {
  switch (kind) {
    case AtomKind::Uniform: return 'U';
    case AtomKind::ExpGamma: return 'X';
    case AtomKind::Mixture: return 'M';
  }
  return '?';
}

RVExpression::RVExpression(std::vector<Term> terms) {
  std::set<Atom> seen;
  Rational constant;
  bool has_constant = false;
  for (auto& term : terms) {
    if (term.is_constant()) {
      constant += term.coefficient;
      has_constant = true;
      continue;
    }
    std::set<Atom> in_term;
    for (const auto& atom : term.atoms) {
      if (atom.id < 1) throw std::invalid_argument("atom ids must be positive: " + atom.str());
      if (!in_term.insert(atom).second) {
        throw ExactnessError(atom, "atom " + atom.str() + " repeated within one term");
      }
      if (!seen.insert(atom).second) {
        throw ExactnessError(atom, "atom " + atom.str() + " appears in more than one term");
      }
    }
    terms_.push_back(std::move(term));
  }
  if (has_constant && !constant.is_zero()) terms_.push_back(Term{constant, {}});
}

RVExpression RVExpression::constant(const Rational& c) { return RVExpression({Term{c, {}}}); }

RVExpression RVExpression::sum_of(AtomKind kind, int count) {
  std::vector<Term> terms;
  for (int i = 1; i <= count; ++i) terms.push_back(Term{Rational(1), {Atom{kind, i}}});
  return RVExpression(std::move(terms));
}

std::vector<Atom> RVExpression::atoms() const {
  std::vector<Atom> out;
  for (const auto& term : terms_) out.insert(out.end(), term.atoms.begin(), term.atoms.end());
  return out;
}

std::string RVExpression::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const Term& term = terms_[i];
    const Rational mag = term.coefficient.sign() < 0 ? -term.coefficient : term.coefficient;
    if (i == 0) {
      if (term.coefficient.sign() < 0) out += "-";
    } else {
      out += term.coefficient.sign() < 0 ? " - " : " + ";
    }
    if (term.is_constant()) {
      out += mag.str();
      continue;
    }
    std::string product;
    for (const auto& atom : term.atoms) product += (product.empty() ? "" : "*") + atom.str();
    out += mag == Rational(1) ? product : mag.str() + "*" + product;
  }
  return out;
}

RVExpression operator+(const RVExpression& a, const RVExpression& b) {
  std::vector<Term> terms = a.terms_;
  terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
  return RVExpression(std::move(terms));
}

RVExpression operator+(const RVExpression& a, const Rational& c) {
  return a + RVExpression::constant(c);
}

}  // namespace mf
