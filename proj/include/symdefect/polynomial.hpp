#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symdefect/errors.hpp"
#include "symdefect/monomial.hpp"
#include "symdefect/rational.hpp"

namespace symdefect {

/// Variable names of a polynomial ring Q[x_1..x_m].
class Ring {
 public:
  explicit Ring(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.size() > Monomial::kMaxVariables)
      throw DimensionMismatch("ring has more than " + std::to_string(Monomial::kMaxVariables) +
                              " variables");
  }
  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

 private:
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> names) {
  return std::make_shared<const Ring>(std::move(names));
}

/// Ring with names prefix1..prefixN.
inline RingPtr make_indexed_ring(const std::string& prefix, std::size_t count) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= count; ++i) names.push_back(prefix + std::to_string(i));
  return make_ring(std::move(names));
}

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

struct Term {
  Monomial monomial;
  Rational coefficient;
};

/// Degree reported for the zero polynomial.
inline constexpr int kZeroPolynomialDegree = std::numeric_limits<int>::min();

namespace detail {

// Sort by `order` descending, merge equal monomials, drop zeros.
inline void canonicalize(std::vector<Term>& terms, const MonomialOrder& order) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) {
    return order.compare(a.monomial, b.monomial) > 0;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size();) {
    Term acc = std::move(terms[i]);
    std::size_t j = i + 1;
    for (; j < terms.size() && terms[j].monomial == acc.monomial; ++j) acc.coefficient += terms[j].coefficient;
    if (sgn(acc.coefficient) != 0) terms[out++] = std::move(acc);
    i = j;
  }
  terms.resize(out);
}

// a + scale * b, both sorted descending in `order`.
inline std::vector<Term> add_scaled(const std::vector<Term>& a, const std::vector<Term>& b,
                                    const Rational& scale, const MonomialOrder& order) {
  std::vector<Term> r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? -1 : j == b.size() ? 1 : order.compare(a[i].monomial, b[j].monomial);
    if (c > 0) {
      r.push_back(a[i++]);
    } else if (c < 0) {
      r.push_back({b[j].monomial, scale * b[j].coefficient});
      ++j;
    } else {
      Rational s = a[i].coefficient + scale * b[j].coefficient;
      if (sgn(s) != 0) r.push_back({a[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

inline std::vector<Term> multiply(const std::vector<Term>& a, const std::vector<Term>& b,
                                  const MonomialOrder& order) {
  std::vector<Term> r;
  r.reserve(a.size() * b.size());
  for (const auto& s : a)
    for (const auto& t : b) r.push_back({s.monomial * t.monomial, s.coefficient * t.coefficient});
  canonicalize(r, order);
  return r;
}

}  // namespace detail

/// Sparse multivariate polynomial with exact rational coefficients.
/// Terms are kept sorted by descending graded reverse lexicographic order.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Rational& c) {
    Polynomial p(std::move(ring));
    if (sgn(c) != 0) p.terms_.push_back({Monomial(p.nvars()), c});
    return p;
  }
  static Polynomial variable(RingPtr ring, std::size_t index) {
    Polynomial p(std::move(ring));
    if (index >= p.nvars()) throw DimensionMismatch("variable index out of range");
    p.terms_.push_back({Monomial::variable(p.nvars(), index), Rational(1)});
    return p;
  }
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    for (const auto& t : terms)
      if (t.monomial.size() != p.nvars()) throw DimensionMismatch("monomial length differs from ring size");
    detail::canonicalize(terms, MonomialOrder::grevlex());
    p.terms_ = std::move(terms);
    return p;
  }
  /// Trusted constructor: `terms` already canonical in grevlex order.
  static Polynomial from_sorted_terms(RingPtr ring, std::vector<Term> terms) {
    Polynomial p(std::move(ring));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return ring_ ? ring_->size() : 0; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].monomial.is_one());
  }

  int total_degree() const noexcept {
    return terms_.empty() ? kZeroPolynomialDegree : static_cast<int>(terms_.front().monomial.degree());
  }

  unsigned degree_in(std::size_t var) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[var]);
    return d;
  }

  /// Bit i set iff variable i occurs in some term.
  std::uint32_t support() const noexcept {
    std::uint32_t s = 0;
    for (const auto& t : terms_) s |= t.monomial.support();
    return s;
  }

  bool is_homogeneous() const noexcept {
    for (const auto& t : terms_)
      if (t.monomial.degree() != terms_.front().monomial.degree()) return false;
    return true;
  }

  const Rational& leading_coefficient() const {
    if (terms_.empty()) throw ZeroPolynomialError("leading coefficient of zero polynomial");
    return terms_.front().coefficient;
  }

  /// Sum of the terms of top total degree.
  Polynomial highest_homogeneous_component() const {
    if (terms_.empty()) throw ZeroPolynomialError("highest homogeneous component of the zero polynomial");
    Polynomial r(ring_);
    unsigned d = terms_.front().monomial.degree();
    for (const auto& t : terms_) {
      if (t.monomial.degree() != d) break;
      r.terms_.push_back(t);
    }
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= nvars()) throw DimensionMismatch("derivative variable out of range");
    std::vector<Term> out;
    for (const auto& t : terms_) {
      unsigned e = t.monomial[var];
      if (e == 0) continue;
      Monomial m = t.monomial;
      m.set(var, e - 1);
      out.push_back({m, t.coefficient * e});
    }
    return from_terms(ring_, std::move(out));
  }

  /// Replaces variable i by images[i]; images share one target ring.
  Polynomial substitute(const std::vector<Polynomial>& images) const {
    if (images.size() != nvars()) throw DimensionMismatch("substitution needs one image per variable");
    RingPtr target = images.empty() ? ring_ : images.front().ring();
    for (const auto& im : images)
      if (!same_ring(im.ring(), target)) throw DimensionMismatch("substitution images in different rings");
    // cache powers per variable
    std::vector<std::vector<Polynomial>> powers(nvars());
    auto power = [&](std::size_t v, unsigned e) -> const Polynomial& {
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      return cache[e];
    };
    std::vector<Term> acc;
    for (const auto& t : terms_) {
      Polynomial prod = constant(target, t.coefficient);
      for (std::size_t v = 0; v < nvars() && !prod.is_zero(); ++v)
        if (t.monomial[v]) prod = prod * power(v, t.monomial[v]);
      acc.insert(acc.end(), prod.terms_.begin(), prod.terms_.end());
    }
    return from_terms(target, std::move(acc));
  }

  /// Same coefficients and exponents, reinterpreted in a ring whose variable i is `index_map[i]`.
  Polynomial embed(RingPtr target, const std::vector<std::size_t>& index_map) const {
    if (index_map.size() != nvars()) throw DimensionMismatch("embedding map has wrong length");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->size());
      for (std::size_t v = 0; v < nvars(); ++v)
        if (t.monomial[v]) m.set(index_map[v], t.monomial[v]);
      out.push_back({m, t.coefficient});
    }
    return from_terms(std::move(target), std::move(out));
  }

  Complex evaluate(std::span<const Complex> point) const {
    if (point.size() != nvars()) throw DimensionMismatch("evaluation point has wrong length");
    Complex sum = 0;
    for (const auto& t : terms_) sum += to_double(t.coefficient) * monomial_value(t.monomial, point);
    return sum;
  }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != nvars()) throw DimensionMismatch("evaluation point has wrong length");
    Rational sum = 0;
    for (const auto& t : terms_) {
      Rational v = t.coefficient;
      for (std::size_t i = 0; i < nvars(); ++i)
        for (unsigned e = 0; e < t.monomial[i]; ++e) v *= point[i];
      sum += v;
    }
    return sum;
  }

  /// |p(z)| / sum_t |c_t| prod_i max(1, |z_i|)^e_i, so tiny coordinates do not inflate the ratio.
  double normalized_residual(std::span<const Complex> point) const {
    if (point.size() != nvars()) throw DimensionMismatch("evaluation point has wrong length");
    Complex sum = 0;
    double scale = 0;
    for (const auto& t : terms_) {
      sum += to_double(t.coefficient) * monomial_value(t.monomial, point);
      double w = std::abs(to_double(t.coefficient));
      for (std::size_t i = 0; i < nvars(); ++i)
        for (unsigned e = 0; e < t.monomial[i]; ++e) w *= std::max(1.0, std::abs(point[i]));
      scale += w;
    }
    return scale == 0 ? 0.0 : std::abs(sum) / scale;
  }

  /// Integer coprime coefficients with positive leading coefficient.
  Polynomial primitive() const {
    if (terms_.empty()) return *this;
    Integer den = 1, num = 0;
    for (const auto& t : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coefficient.get_den_mpz_t());
    for (const auto& t : terms_) mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coefficient.get_num_mpz_t());
    Rational scale(den, num);
    scale.canonicalize();
    if (sgn(terms_.front().coefficient) < 0) scale = -scale;
    return *this * scale;
  }

  Polynomial monic() const {
    if (terms_.empty()) return *this;
    Rational inv = 1 / terms_.front().coefficient;
    return *this * inv;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1) r = r * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    check_same(a, b);
    return from_sorted_terms(a.ring_ ? a.ring_ : b.ring_,
                             detail::add_scaled(a.terms_, b.terms_, Rational(1), MonomialOrder::grevlex()));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    check_same(a, b);
    return from_sorted_terms(a.ring_ ? a.ring_ : b.ring_,
                             detail::add_scaled(a.terms_, b.terms_, Rational(-1), MonomialOrder::grevlex()));
  }
  friend Polynomial operator-(const Polynomial& a) { return a * Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_same(a, b);
    return from_sorted_terms(a.ring_ ? a.ring_ : b.ring_,
                             detail::multiply(a.terms_, b.terms_, MonomialOrder::grevlex()));
  }
  friend Polynomial operator*(const Polynomial& a, const Rational& c) {
    Polynomial r(a.ring_);
    if (sgn(c) == 0) return r;
    r.terms_.reserve(a.terms_.size());
    for (const auto& t : a.terms_) r.terms_.push_back({t.monomial, t.coefficient * c});
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coefficient != b.terms_[i].coefficient)
        return false;
    return a.terms_.empty() || same_ring(a.ring_, b.ring_);
  }

  /// Canonical text: grevlex-descending terms, e.g. "3/2*x1*x3 + x2^2 - 1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
      Rational c = t.coefficient;
      bool negative = sgn(c) < 0;
      if (negative) c = -c;
      if (first) {
        if (negative) os << '-';
      } else {
        os << (negative ? " - " : " + ");
      }
      first = false;
      bool unit = c == 1;
      if (!unit || t.monomial.is_one()) os << c.get_str();
      bool need_star = !unit;
      for (std::size_t v = 0; v < nvars(); ++v) {
        unsigned e = t.monomial[v];
        if (!e) continue;
        if (need_star) os << '*';
        os << ring_->name(v);
        if (e > 1) os << '^' << e;
        need_star = true;
      }
    }
    return os.str();
  }

 private:
  static Complex monomial_value(const Monomial& m, std::span<const Complex> point) {
    Complex v = 1;
    for (std::size_t i = 0; i < m.size(); ++i) {
      unsigned e = m[i];
      if (e == 0) continue;
      Complex b = point[i], r = 1;
      while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
      }
      v *= r;
    }
    return v;
  }

  static void check_same(const Polynomial& a, const Polynomial& b) {
    if (a.ring_ && b.ring_ && !same_ring(a.ring_, b.ring_))
      throw DimensionMismatch("polynomials live in different rings");
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

/// Linear polynomial sum_i coefficients[i] * x_i + constant.
inline Polynomial linear_polynomial(const RingPtr& ring, const std::vector<Rational>& coefficients,
                                    const Rational& constant = 0) {
  if (coefficients.size() != ring->size()) throw DimensionMismatch("linear form has wrong length");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < coefficients.size(); ++i)
    if (sgn(coefficients[i]) != 0) terms.push_back({Monomial::variable(ring->size(), i), coefficients[i]});
  if (sgn(constant) != 0) terms.push_back({Monomial(ring->size()), constant});
  return Polynomial::from_terms(ring, std::move(terms));
}

}  // namespace symdefect
