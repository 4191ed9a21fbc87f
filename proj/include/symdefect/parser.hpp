#pragma once

// Recursive-descent reader for polynomial text.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer ('/' integer)? | identifier | '(' expr ')'
//
// Whitespace is insignificant and there is no implicit multiplication.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "symdefect/polynomial.hpp"

namespace symdefect {

namespace detail {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, RingPtr ring) : text_(text), ring_(std::move(ring)) {}

  Polynomial parse() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError("empty expression", pos_);
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  Polynomial expr() {
    Polynomial acc = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    for (;;) {
      skip_space();
      if (!accept('*')) return acc;
      acc *= unary();
    }
  }

  Polynomial unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    skip_space();
    if (!accept('^')) return base;
    skip_space();
    std::size_t at = pos_;
    if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      throw SyntaxError("exponent must be a non-negative integer literal", at);
    Integer e = digits();
    if (e > 65535) throw SyntaxError("exponent too large", at);
    return base.pow(static_cast<unsigned>(e.get_ui()));
  }

  Polynomial primary() {
    skip_space();
    if (pos_ == text_.size()) throw SyntaxError("unexpected end of input", pos_);
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_space();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer num = digits();
      std::size_t save = pos_;
      skip_space();
      if (accept('/')) {
        skip_space();
        std::size_t at = pos_;
        if (pos_ == text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
          throw SyntaxError("expected integer denominator", at);
        Integer den = digits();
        if (den == 0) throw SyntaxError("zero denominator", at);
        Rational r(num, den);
        r.canonicalize();
        return Polynomial::constant(ring_, r);
      }
      pos_ = save;
      return Polynomial::constant(ring_, Rational(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = ring_->index_of(name);
      if (!idx) throw UnknownVariableError(name, start);
      return Polynomial::variable(ring_, *idx);
    }
    throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Integer(std::string(text_.substr(start, pos_ - start)), 10);
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  RingPtr ring_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const RingPtr& ring) {
  return detail::PolynomialParser(text, ring).parse();
}

inline Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  return parse_polynomial(text, make_ring(variables));
}

}  // namespace symdefect
