#pragma once

// Zero-dimensional solving over C.
//
// The quotient algebra A = Q[x]/I is built from a grevlex Groebner basis. For a random
// integer linear form l, the characteristic polynomial of multiplication by l on A is
// prod_p (T - l(p))^mult(p), so its exact squarefree decomposition yields every local
// multiplicity. Point coordinates come from the rational univariate representation
// v(p) = g_v(l(p)) / g_1(l(p)), whose coefficients are traces Tr(v * l^e) on A; the
// univariate factors are solved with the Aberth-Ehrlich iteration.

#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "symdefect/ideal.hpp"
#include "symdefect/univariate.hpp"

namespace symdefect {

struct SolvePoint {
  std::vector<Complex> coordinates;
  int multiplicity = 1;
};

struct SolveOptions {
  double clustering_radius = 1e-7;
  double residual_tolerance = 1e-8;
  std::uint64_t seed = 1;
  int max_retries = 3;
};

struct SolutionSet {
  std::vector<SolvePoint> points;
  int total_multiplicity = 0;
  double clustering_radius = 1e-7;
  double max_residual = 0;
  std::vector<std::string> warnings;

  /// One row per point: re/im per coordinate, then the multiplicity.
  std::string to_csv(const std::vector<std::string>& names) const {
    std::ostringstream os;
    for (const auto& n : names) os << n << "_re," << n << "_im,";
    os << "multiplicity\n";
    os << std::setprecision(17);
    for (const auto& p : points) {
      for (const auto& z : p.coordinates) os << z.real() << ',' << z.imag() << ',';
      os << p.multiplicity << '\n';
    }
    return os.str();
  }
};

/// Q[x]/I for a zero-dimensional I, with exact multiplication maps in the standard-monomial basis.
class QuotientAlgebra {
 public:
  using Vector = std::vector<Rational>;

  explicit QuotientAlgebra(GroebnerBasis gb) : gb_(std::move(gb)) {
    std::size_t m = gb_.ring()->size();
    if (gb_.is_unit()) return;
    // zero-dimensional iff every variable has a pure power among the leading monomials
    for (std::size_t v = 0; v < m; ++v) {
      bool found = false;
      for (const auto& lm : gb_.leading_monomials())
        if (lm.support() == (std::uint32_t{1} << v)) found = true;
      if (!found) throw PositiveDimensionError("ideal is not zero-dimensional", dimension_from_basis(gb_));
    }
    std::vector<Monomial> frontier{Monomial(m)};
    index_.emplace(Monomial(m), 0);
    basis_.push_back(Monomial(m));
    while (!frontier.empty()) {
      std::vector<Monomial> next;
      for (const auto& b : frontier) {
        for (std::size_t v = 0; v < m; ++v) {
          Monomial c = b * Monomial::variable(m, v);
          if (index_.count(c) || !gb_.is_standard(c)) continue;
          index_.emplace(c, basis_.size());
          basis_.push_back(c);
          next.push_back(c);
        }
      }
      frontier = std::move(next);
    }
    std::sort(basis_.begin(), basis_.end(),
              [](const Monomial& a, const Monomial& b) { return MonomialOrder::grevlex().compare(a, b) < 0; });
    index_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
  }

  std::size_t dimension() const noexcept { return basis_.size(); }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  const GroebnerBasis& groebner_basis() const noexcept { return gb_; }

  /// Coordinates of the normal form of a monomial.
  const Vector& coordinates(const Monomial& m) {
    auto it = memo_.find(m);
    if (it != memo_.end()) return it->second;
    Vector v(dimension(), Rational(0));
    auto idx = index_.find(m);
    if (idx != index_.end()) {
      v[idx->second] = 1;
    } else if (m.degree() <= max_basis_degree() + 1) {
      Polynomial nf = gb_.normal_form(Polynomial::from_terms(gb_.ring(), {{m, Rational(1)}}));
      for (const auto& t : nf.terms()) v[index_.at(t.monomial)] = t.coefficient;
    } else {
      std::size_t var = 0;
      while (m[var] == 0) ++var;
      Monomial smaller = m;
      smaller.set(var, m[var] - 1);
      Vector inner = coordinates(smaller);
      v = multiply_by_variable(var, inner);
    }
    return memo_.emplace(m, std::move(v)).first->second;
  }

  Vector coordinates(const Polynomial& p) {
    Vector v(dimension(), Rational(0));
    for (const auto& t : p.terms()) {
      const Vector& c = coordinates(t.monomial);
      for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(c[i]) != 0) v[i] += t.coefficient * c[i];
    }
    return v;
  }

  /// Image of a coordinate vector under multiplication by variable `var`.
  Vector multiply_by_variable(std::size_t var, const Vector& x) {
    Vector out(dimension(), Rational(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (sgn(x[j]) == 0) continue;
      const Vector& col = coordinates(basis_[j] * Monomial::variable(basis_[j].size(), var));
      for (std::size_t i = 0; i < out.size(); ++i)
        if (sgn(col[i]) != 0) out[i] += x[j] * col[i];
    }
    return out;
  }

  Vector multiply_by_linear(const std::vector<Rational>& coefficients, const Vector& x) {
    Vector out(dimension(), Rational(0));
    for (std::size_t v = 0; v < coefficients.size(); ++v) {
      if (sgn(coefficients[v]) == 0) continue;
      Vector part = multiply_by_variable(v, x);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += coefficients[v] * part[i];
    }
    return out;
  }

  /// Linear functional f -> Tr(multiplication by f), as coefficients on the basis.
  const Vector& trace_form() {
    if (!trace_.empty() || dimension() == 0) return trace_;
    trace_.assign(dimension(), Rational(0));
    for (std::size_t k = 0; k < dimension(); ++k)
      for (std::size_t j = 0; j < dimension(); ++j) trace_[k] += coordinates(basis_[k] * basis_[j])[j];
    return trace_;
  }

  Rational trace(const Vector& x) {
    const Vector& t = trace_form();
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (sgn(x[i]) != 0) s += t[i] * x[i];
    return s;
  }

  /// Characteristic polynomial of multiplication by the linear form, from power sums.
  UPoly characteristic_polynomial(const std::vector<Rational>& linear, std::vector<Vector>* powers = nullptr) {
    std::size_t n = dimension();
    std::vector<Vector> w;
    w.push_back(coordinates(Monomial(gb_.ring()->size())));
    for (std::size_t e = 1; e <= n; ++e) w.push_back(multiply_by_linear(linear, w.back()));
    std::vector<Rational> s(n + 1);
    for (std::size_t e = 0; e <= n; ++e) s[e] = trace(w[e]);
    std::vector<Rational> el(n + 1, Rational(0));
    el[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      Rational acc = 0;
      for (std::size_t i = 1; i <= k; ++i) {
        Rational term = el[k - i] * s[i];
        if (i % 2) acc += term;
        else acc -= term;
      }
      el[k] = acc / static_cast<unsigned long>(k);
    }
    std::vector<Rational> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k) c[n - k] = (k % 2) ? Rational(-el[k]) : el[k];
    if (powers) *powers = std::move(w);
    return UPoly(std::move(c));
  }

  std::size_t max_basis_degree() const {
    std::size_t d = 0;
    for (const auto& b : basis_) d = std::max<std::size_t>(d, b.degree());
    return d;
  }

 private:
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::unordered_map<Monomial, Vector, MonomialHash> memo_;
  Vector trace_;
};

namespace detail {

inline std::vector<Rational> random_linear_form(std::size_t n, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  std::vector<Rational> c(n);
  for (auto& x : c) {
    int v = 0;
    while (v == 0) v = d(rng);
    x = v;
  }
  return c;
}

inline double max_residual(const std::vector<Polynomial>& gens, const std::vector<Complex>& point) {
  double r = 0;
  for (const auto& g : gens) r = std::max(r, g.normalized_residual(point));
  return r;
}

inline double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

// Newton steps on the overdetermined system (least squares via normal equations) for a simple point.
inline void polish_point(const std::vector<Polynomial>& gens, std::vector<Complex>& point, int iterations = 3) {
  std::size_t n = point.size();
  std::vector<std::vector<Polynomial>> jac(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t v = 0; v < n; ++v) jac[i].push_back(gens[i].derivative(v));
  for (int it = 0; it < iterations; ++it) {
    // normal equations J^H J dx = -J^H F
    std::vector<std::vector<Complex>> a(n, std::vector<Complex>(n + 1, 0));
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Complex f = gens[i].evaluate(point);
      std::vector<Complex> row(n);
      for (std::size_t v = 0; v < n; ++v) row[v] = jac[i][v].evaluate(point);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a[r][c] += std::conj(row[r]) * row[c];
        a[r][n] -= std::conj(row[r]) * f;
      }
    }
    // Gaussian elimination with partial pivoting
    bool singular = false;
    for (std::size_t c = 0; c < n && !singular; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      if (std::abs(a[piv][c]) < 1e-300) {
        singular = true;
        break;
      }
      std::swap(a[piv], a[c]);
      for (std::size_t r = c + 1; r < n; ++r) {
        Complex f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    if (singular) return;
    std::vector<Complex> dx(n);
    for (std::size_t r = n; r-- > 0;) {
      Complex s = a[r][n];
      for (std::size_t k = r + 1; k < n; ++k) s -= a[r][k] * dx[k];
      dx[r] = s / a[r][r];
    }
    std::vector<Complex> candidate = point;
    for (std::size_t v = 0; v < n; ++v) candidate[v] += dx[v];
    if (max_residual(gens, candidate) <= max_residual(gens, point)) point = std::move(candidate);
    else return;
  }
}

}  // namespace detail

/// Number of solutions counted with multiplicity (dimension of Q[x]/I).
inline int count_with_multiplicity(const Ideal& ideal, Budget& budget) {
  QuotientAlgebra a(groebner(ideal, MonomialOrder::grevlex(), budget));
  return static_cast<int>(a.dimension());
}

/// Number of distinct solutions: degree of the squarefree part of the characteristic
/// polynomial of a random linear form (maximum over two draws, guarding against a
/// non-separating draw).
inline int count_distinct(const Ideal& ideal, Budget& budget, std::uint64_t seed = 1) {
  QuotientAlgebra a(groebner(ideal, MonomialOrder::grevlex(), budget));
  if (a.dimension() == 0) return 0;
  std::mt19937_64 rng(seed);
  int best = 0;
  for (int k = 0; k < 2; ++k) {
    auto l = detail::random_linear_form(ideal.ring()->size(), rng, 20);
    best = std::max(best, a.characteristic_polynomial(l).squarefree_part().degree());
  }
  return best;
}

/// All solutions with multiplicities.
inline SolutionSet solve(const Ideal& ideal, Budget& budget, const SolveOptions& options = {}) {
  SolutionSet out;
  out.clustering_radius = options.clustering_radius;
  QuotientAlgebra algebra(groebner(ideal, MonomialOrder::grevlex(), budget));
  std::size_t n = algebra.dimension();
  out.total_multiplicity = static_cast<int>(n);
  if (n == 0) return out;
  const std::size_t nv = ideal.ring()->size();
  auto gens = ideal.nonzero_generators();
  std::mt19937_64 rng(options.seed);

  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    auto l = detail::random_linear_form(nv, rng, 10 + 10 * attempt);
    std::vector<QuotientAlgebra::Vector> powers;
    UPoly chi = algebra.characteristic_polynomial(l, &powers);
    auto factors = chi.squarefree_decomposition();
    UPoly sqf = UPoly::monomial(0);
    for (const auto& f : factors) sqf = sqf * f;
    int r = sqf.degree();
    const auto& a = sqf.coefficients();
    // traces Tr(v * l^e) for v in {1, x_1..x_n}, e < r
    std::vector<std::vector<Rational>> tr(nv + 1, std::vector<Rational>(static_cast<std::size_t>(r)));
    for (int e = 0; e < r; ++e) {
      tr[0][static_cast<std::size_t>(e)] = algebra.trace(powers[static_cast<std::size_t>(e)]);
      for (std::size_t v = 0; v < nv; ++v)
        tr[v + 1][static_cast<std::size_t>(e)] =
            algebra.trace(algebra.multiply_by_variable(v, powers[static_cast<std::size_t>(e)]));
    }
    auto rur = [&](std::size_t which) {
      std::vector<Rational> g(static_cast<std::size_t>(r), Rational(0));
      for (int k = 0; k < r; ++k)
        for (int j = k + 1; j <= r; ++j)
          g[static_cast<std::size_t>(k)] += a[static_cast<std::size_t>(j)] * tr[which][static_cast<std::size_t>(j - k - 1)];
      return UPoly(std::move(g));
    };
    UPoly g1 = rur(0);
    std::vector<UPoly> gv;
    for (std::size_t v = 0; v < nv; ++v) gv.push_back(rur(v + 1));

    std::vector<SolvePoint> points;
    double worst = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (factors[k].degree() <= 0) continue;
      for (Complex lambda : aberth_roots(factors[k])) {
        SolvePoint p;
        p.multiplicity = static_cast<int>(k + 1);
        Complex denom = g1.evaluate(lambda);
        for (std::size_t v = 0; v < nv; ++v) p.coordinates.push_back(gv[v].evaluate(lambda) / denom);
        if (p.multiplicity == 1) detail::polish_point(gens, p.coordinates);
        worst = std::max(worst, detail::max_residual(gens, p.coordinates));
        points.push_back(std::move(p));
      }
    }
    // Residuals of multiple points are limited by conditioning; scale the tolerance accordingly.
    bool ok = true;
    for (const auto& p : points) {
      double tol = p.multiplicity == 1 ? options.residual_tolerance
                                       : std::max(options.residual_tolerance, 1e-6);
      if (detail::max_residual(gens, p.coordinates) > tol) ok = false;
    }
    if (!ok && attempt < options.max_retries) continue;
    if (!ok) out.warnings.push_back("residual above tolerance after retries");

    // cluster numerically coincident points
    std::vector<SolvePoint> merged;
    for (auto& p : points) {
      bool absorbed = false;
      for (auto& q : merged) {
        double d = detail::distance(p.coordinates, q.coordinates);
        if (d <= 2 * options.clustering_radius) {
          q.multiplicity += p.multiplicity;
          absorbed = true;
          out.warnings.push_back("merged numerically coincident points");
          break;
        }
        if (d <= 10 * options.clustering_radius) out.warnings.push_back("ill-conditioned cluster");
      }
      if (!absorbed) merged.push_back(std::move(p));
    }
    std::sort(merged.begin(), merged.end(), [](const SolvePoint& x, const SolvePoint& y) {
      for (std::size_t i = 0; i < x.coordinates.size(); ++i) {
        double a1 = std::round(x.coordinates[i].real() * 1e9), b1 = std::round(y.coordinates[i].real() * 1e9);
        if (a1 != b1) return a1 < b1;
        double a2 = std::round(x.coordinates[i].imag() * 1e9), b2 = std::round(y.coordinates[i].imag() * 1e9);
        if (a2 != b2) return a2 < b2;
      }
      return false;
    });
    out.points = std::move(merged);
    out.max_residual = 0;
    for (const auto& p : out.points)
      out.max_residual = std::max(out.max_residual, detail::max_residual(gens, p.coordinates));
    return out;
  }
  return out;
}

/// Number of points in the intersection with a generic affine subspace of complementary
/// dimension (distinct points). Two random slices must agree; a third breaks a tie.
inline int degree_of_variety(const Ideal& ideal, Budget& budget, std::uint64_t seed = 1) {
  int k = dimension(ideal, budget);
  if (k < 0) return 0;
  if (k == 0) return count_distinct(ideal, budget, seed);
  const std::size_t m = ideal.ring()->size();
  const std::size_t free = m - static_cast<std::size_t>(k);
  auto slice_ring = make_indexed_ring("t", free);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-9, 9);
  auto one_slice = [&]() -> int {
    std::vector<Polynomial> images;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<Rational> c(free);
      for (auto& x : c) x = d(rng);
      images.push_back(linear_polynomial(slice_ring, c, Rational(d(rng))));
    }
    std::vector<Polynomial> gens;
    for (const auto& g : ideal.nonzero_generators()) gens.push_back(g.substitute(images));
    try {
      return count_distinct(Ideal(slice_ring, gens), budget, rng());
    } catch (const PositiveDimensionError&) {
      return -1;
    }
  };
  int a = one_slice(), b = one_slice();
  if (a == b && a >= 0) return a;
  int c = one_slice();
  if (c >= 0 && (c == a || c == b)) return c;
  throw DisagreementError("generic slices disagree on the degree");
}

}  // namespace symdefect
