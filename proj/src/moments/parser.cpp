#include <cctype>

#include "mf/moments.hpp"

namespace mf {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::invalid_argument("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RVExpression parse() {
    std::vector<Term> terms;
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    terms.push_back(parse_term(negate));
    while (true) {
      skip_space();
      if (at_end()) break;
      const char c = peek();
      if (c != '+' && c != '-') throw ParseError(pos_, std::string("expected '+' or '-', found '") + c + "'");
      ++pos_;
      terms.push_back(parse_term(c == '-'));
    }
    return RVExpression(std::move(terms));
  }

 private:
  Term parse_term(bool negate) {
    skip_space();
    Term term{Rational(1), {}};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      term.coefficient = parse_rational();
      skip_space();
      if (peek() == '*') {
        ++pos_;
        parse_factors(term);
      }
    } else if (is_atom_letter(peek())) {
      parse_factors(term);
    } else {
      throw ParseError(pos_, at_end() ? "unexpected end of input" : std::string("unexpected '") + peek() + "'");
    }
    if (negate) term.coefficient = -term.coefficient;
    return term;
  }

  void parse_factors(Term& term) {
    while (true) {
      skip_space();
      term.atoms.push_back(parse_atom());
      skip_space();
      if (peek() != '*') return;
      ++pos_;
    }
  }

  Atom parse_atom() {
    const std::size_t start = pos_;
    const char letter = peek();
    Atom atom;
    switch (letter) {
      case 'U': atom.kind = AtomKind::Uniform; break;
      case 'X': atom.kind = AtomKind::ExpGamma; break;
      case 'M': atom.kind = AtomKind::Mixture; break;
      default:
        throw ParseError(pos_, at_end() ? "expected an atom (U, X or M)"
                                        : std::string("expected an atom (U, X or M), found '") + letter + "'");
    }
    ++pos_;
    const std::string digits = read_digits();
    if (digits.empty()) throw ParseError(pos_, std::string("atom '") + letter + "' needs a numeric id");
    if (digits.size() > 9) throw ParseError(start, "atom id too large");
    atom.id = std::stoi(digits);
    if (atom.id < 1) throw ParseError(start, "atom ids start at 1");
    return atom;
  }

  Rational parse_rational() {
    const std::size_t start = pos_;
    std::string text = read_digits();
    skip_space();
    if (peek() == '/') {
      ++pos_;
      skip_space();
      const std::string den = read_digits();
      if (den.empty()) throw ParseError(pos_, "expected a denominator after '/'");
      if (den.find_first_not_of('0') == std::string::npos) throw ParseError(start, "zero denominator");
      text += "/" + den;
    }
    return Rational::parse(text);
  }

  std::string read_digits() {
    std::string out;
    while (std::isdigit(static_cast<unsigned char>(peek()))) out += text_[pos_++];
    return out;
  }

  static bool is_atom_letter(char c) { return c == 'U' || c == 'X' || c == 'M'; }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RVExpression parse_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace mf
