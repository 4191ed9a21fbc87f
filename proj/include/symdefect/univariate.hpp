#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "symdefect/polynomial.hpp"

namespace symdefect {

/// Dense univariate polynomial over Q; coefficient i multiplies T^i. Trailing zeros trimmed.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

  static UPoly monomial(std::size_t degree, const Rational& coefficient = 1) {
    std::vector<Rational> c(degree + 1, Rational(0));
    c[degree] = coefficient;
    return UPoly(std::move(c));
  }

  /// Requires every term of p to involve only variable `var`.
  static UPoly from_polynomial(const Polynomial& p, std::size_t var) {
    std::vector<Rational> c(p.is_zero() ? 0 : p.degree_in(var) + 1, Rational(0));
    for (const auto& t : p.terms()) {
      if (t.monomial.degree() != t.monomial[var]) throw DimensionMismatch("polynomial is not univariate");
      c[t.monomial[var]] = t.coefficient;
    }
    return UPoly(std::move(c));
  }

  Polynomial to_polynomial(const RingPtr& ring, std::size_t var) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (sgn(c_[i]) != 0) terms.push_back({Monomial::variable(ring->size(), var, static_cast<unsigned>(i)), c_[i]});
    return Polynomial::from_terms(ring, std::move(terms));
  }

  bool is_zero() const noexcept { return c_.empty(); }
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return c_; }
  const Rational& leading() const { return c_.back(); }
  Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(d));
  }

  UPoly monic() const {
    if (c_.empty()) return {};
    UPoly r = *this;
    Rational inv = 1 / c_.back();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
    return UPoly(std::move(c));
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(c));
  }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder; divisor nonzero.
  static std::pair<UPoly, UPoly> divmod(const UPoly& num, const UPoly& den) {
    if (den.is_zero()) throw ZeroPolynomialError("division by the zero polynomial");
    std::vector<Rational> r = num.c_;
    if (num.degree() < den.degree()) return {UPoly(), num};
    std::vector<Rational> q(static_cast<std::size_t>(num.degree() - den.degree() + 1), Rational(0));
    Rational inv = 1 / den.c_.back();
    for (int k = num.degree() - den.degree(); k >= 0; --k) {
      Rational f = r[static_cast<std::size_t>(k) + den.c_.size() - 1] * inv;
      q[static_cast<std::size_t>(k)] = f;
      if (sgn(f) == 0) continue;
      for (std::size_t j = 0; j < den.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * den.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  /// Monic greatest common divisor (zero when both are zero).
  static UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
      UPoly r = divmod(a, b).second;
      a = std::move(b);
      b = r.monic();
    }
    return a.monic();
  }

  UPoly squarefree_part() const {
    if (degree() <= 0) return monic();
    return divmod(*this, gcd(*this, derivative())).first.monic();
  }

  /// Yun's algorithm: returns (P_1, P_2, ...) with *this ~ prod P_k^k, each P_k squarefree and monic.
  std::vector<UPoly> squarefree_decomposition() const {
    std::vector<UPoly> out;
    if (degree() <= 0) return out;
    UPoly f = monic();
    UPoly fp = f.derivative();
    UPoly a = gcd(f, fp);
    UPoly b = divmod(f, a).first;
    UPoly c = divmod(fp, a).first;
    UPoly d = c - b.derivative();
    while (b.degree() > 0) {
      UPoly g = gcd(b, d);
      out.push_back(g);
      b = divmod(b, g).first;
      c = divmod(d, g).first;
      d = c - b.derivative();
    }
    return out;
  }

  Complex evaluate(Complex z) const {
    Complex acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * z + to_double(c_[i]);
    return acc;
  }

  std::vector<Complex> complex_coefficients() const {
    std::vector<Complex> out;
    for (const auto& x : c_) out.emplace_back(to_double(x), 0.0);
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

/// All complex roots of sum coeffs[i] z^i by the Aberth-Ehrlich simultaneous iteration.
/// Intended for squarefree input; repeated roots converge slowly and lose accuracy.
inline std::vector<Complex> aberth_roots(std::vector<Complex> coeffs, int max_iterations = 500) {
  while (!coeffs.empty() && coeffs.back() == Complex(0)) coeffs.pop_back();
  if (coeffs.size() <= 1) return {};
  std::size_t n = coeffs.size() - 1;
  Complex lead = coeffs.back();
  for (auto& c : coeffs) c /= lead;
  std::size_t zeros = 0;
  while (zeros < n && coeffs[zeros] == Complex(0)) ++zeros;
  std::vector<Complex> roots(zeros, Complex(0));
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(zeros));
  n -= zeros;
  if (n == 0) return roots;

  auto eval = [&](Complex z, Complex& p, Complex& dp) {
    p = coeffs[n];
    dp = 0;
    for (std::size_t i = n; i-- > 0;) {
      dp = dp * z + p;
      p = p * z + coeffs[i];
    }
  };
  // Initial guesses on a circle of radius ~ geometric mean root modulus.
  double radius = std::pow(std::abs(coeffs[0]), 1.0 / static_cast<double>(n));
  double cauchy = 0;
  for (std::size_t i = 0; i < n; ++i) cauchy = std::max(cauchy, std::abs(coeffs[i]));
  radius = std::clamp(radius, 1e-8, 1.0 + cauchy);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }
  std::vector<char> done(n, 0);
  for (int it = 0; it < max_iterations; ++it) {
    bool all = true;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p, dp;
      eval(z[k], p, dp);
      if (p == Complex(0)) {
        done[k] = 1;
        continue;
      }
      Complex ratio = p / dp;
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[k] - z[j]);
      Complex step = ratio / (1.0 - ratio * sum);
      z[k] -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z[k]))) done[k] = 1;
      else all = false;
    }
    if (all) break;
  }
  // Newton polish
  for (auto& r : z) {
    for (int k = 0; k < 3; ++k) {
      Complex p, dp;
      eval(r, p, dp);
      if (dp == Complex(0)) break;
      Complex step = p / dp;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      r -= step;
    }
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

inline std::vector<Complex> aberth_roots(const UPoly& p) { return aberth_roots(p.complex_coefficients()); }

}  // namespace symdefect
