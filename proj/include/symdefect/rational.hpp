#pragma once

#include <gmpxx.h>

#include <cctype>
#include <complex>
#include <string>
#include <string_view>

#include "symdefect/errors.hpp"

namespace symdefect {

/// Exact rational number; GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using Complex = std::complex<double>;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses "-3", "7/2", "0.125", "-1.5e-3" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  }
  if (s.empty()) throw SyntaxError("empty number", 0);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0) throw SyntaxError("bad numerator '" + s + "'", 0);
    if (den.set_str(s.substr(slash + 1), 10) != 0 || den == 0)
      throw SyntaxError("bad denominator '" + s + "'", slash + 1);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_dot = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_dot) ++scale;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw SyntaxError("bad number '" + s + "'", pos);
  long exponent = 0;
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw SyntaxError("bad number '" + s + "'", pos);
    try {
      std::size_t used = 0;
      exponent = std::stol(s.substr(pos + 1), &used);
      if (used != s.size() - pos - 1) throw SyntaxError("bad exponent '" + s + "'", pos);
    } catch (const std::logic_error&) {
      throw SyntaxError("bad exponent '" + s + "'", pos);
    }
  }
  Integer mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  long shift = exponent - scale;
  Integer power;
  mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift < 0 ? Rational(mantissa, power) : Rational(mantissa * power);
  r.canonicalize();
  return r;
}

/// Smallest positive integer multiple of every denominator.
inline Integer lcm_of_denominators(const Rational* begin, const Rational* end) {
  Integer l = 1;
  for (auto it = begin; it != end; ++it) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), it->get_den_mpz_t());
  return l;
}

}  // namespace symdefect
