#pragma once

// Midpoint map Phi(x, y) = (x + y) / 2 on X x Y for complete intersections X, Y in C^m,
// m = 2n - 1, and the symbolic loci attached to it.
//
// Ring conventions: X and Y are given over the problem's own variable names. Loci on X x Y
// live in the ring x1..xm, y1..ym; target loci live in z1..zm.

#include <optional>
#include <random>
#include <sstream>
#include <unordered_map>

#include "symdefect/matrix.hpp"
#include "symdefect/solve0d.hpp"

namespace symdefect {

struct VarietySpec {
  RingPtr ring;
  std::vector<Polynomial> equations;
  int n = 0;

  VarietySpec() = default;
  VarietySpec(RingPtr r, std::vector<Polynomial> eqs, int dim) : ring(std::move(r)), equations(std::move(eqs)), n(dim) {
    if (n < 1 || static_cast<std::size_t>(n) > ring->size())
      throw DimensionMismatch("variety dimension out of range");
    if (equations.size() != ring->size() - static_cast<std::size_t>(n))
      throw DimensionMismatch("a complete intersection of dimension n in C^m needs m - n equations");
    for (const auto& e : equations) {
      if (e.is_zero()) throw ZeroPolynomialError("defining equation is zero");
      if (!same_ring(e.ring(), ring)) throw DimensionMismatch("equation from another ring");
      if (e.is_constant()) throw PreconditionError("defining equation is a nonzero constant");
    }
  }

  std::size_t ambient_dimension() const { return ring->size(); }

  std::vector<int> multi_degree() const {
    std::vector<int> d;
    for (const auto& e : equations) d.push_back(e.total_degree());
    return d;
  }

  std::vector<Polynomial> leading_forms() const {
    std::vector<Polynomial> out;
    for (const auto& e : equations) out.push_back(e.highest_homogeneous_component());
    return out;
  }
};

struct StrongCIReport {
  bool smooth = false;
  int leading_form_dimension = -1;
  int expected_dimension = 0;  // n
  int literal_dimension = 0;   // m - n

  bool leading_forms_ok() const { return leading_form_dimension == expected_dimension; }
  bool literal_reading_holds() const { return leading_form_dimension == literal_dimension; }
  bool passed() const { return smooth && leading_forms_ok(); }
};

struct LinearForm {
  std::vector<Rational> coefficients;

  LinearForm() = default;
  explicit LinearForm(std::vector<Rational> c) : coefficients(std::move(c)) {
    bool nonzero = false;
    for (const auto& x : coefficients) nonzero |= sgn(x) != 0;
    if (!nonzero) throw ZeroPolynomialError("linear form is identically zero");
  }

  /// The form in variables offset..offset+size-1 of `ring`.
  Polynomial on(const RingPtr& ring, std::size_t offset = 0) const {
    std::vector<Rational> c(ring->size(), Rational(0));
    for (std::size_t i = 0; i < coefficients.size(); ++i) c[offset + i] = coefficients[i];
    return linear_polynomial(ring, c, Rational(0));
  }

  Complex evaluate(std::span<const Complex> point) const {
    Complex s = 0;
    for (std::size_t i = 0; i < coefficients.size(); ++i) s += to_double(coefficients[i]) * point[i];
    return s;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coefficients.size(); ++i) {
      if (i) out += ',';
      out += symdefect::to_string(coefficients[i]);
    }
    return out;
  }
};

struct MidpointProblem {
  VarietySpec X, Y;
  std::optional<LinearForm> L;
  std::uint64_t seed = 1;

  MidpointProblem() = default;
  MidpointProblem(VarietySpec x, VarietySpec y, std::optional<LinearForm> l = std::nullopt, std::uint64_t s = 1)
      : X(std::move(x)), Y(std::move(y)), L(std::move(l)), seed(s) {
    if (X.n != Y.n) throw DimensionMismatch("X and Y must have the same dimension");
    if (X.ambient_dimension() != static_cast<std::size_t>(2 * X.n - 1) || Y.ambient_dimension() != X.ambient_dimension())
      throw DimensionMismatch("midpoint problems live in C^(2n-1)");
    if (L && L->coefficients.size() != X.ambient_dimension())
      throw DimensionMismatch("linear form has the wrong number of coefficients");
  }

  int n() const { return X.n; }
  std::size_t m() const { return X.ambient_dimension(); }
  const RingPtr& ring() const { return X.ring; }

  RingPtr pair_ring() const {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= m(); ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = 1; i <= m(); ++i) names.push_back("y" + std::to_string(i));
    return make_ring(names);
  }
  RingPtr target_ring() const { return make_indexed_ring("z", m()); }

  /// f(x) and g(y) embedded in the pair ring.
  std::vector<Polynomial> f_on_pair(const RingPtr& pair) const { return embed_all(X.equations, pair, 0); }
  std::vector<Polynomial> g_on_pair(const RingPtr& pair) const { return embed_all(Y.equations, pair, m()); }

  const LinearForm& linear_form() const {
    if (!L) throw PreconditionError("no linear form chosen");
    return *L;
  }

 private:
  std::vector<Polynomial> embed_all(const std::vector<Polynomial>& eqs, const RingPtr& pair, std::size_t offset) const {
    std::vector<std::size_t> map(m());
    for (std::size_t i = 0; i < m(); ++i) map[i] = offset + i;
    std::vector<Polynomial> out;
    for (const auto& e : eqs) out.push_back(e.embed(pair, map));
    return out;
  }
};

/// Smoothness via Jacobian minors and the dimension of the leading-form cone.
inline StrongCIReport check_strong_ci(const VarietySpec& spec, Budget& budget) {
  StrongCIReport r;
  std::size_t m = spec.ambient_dimension();
  r.expected_dimension = spec.n;
  r.literal_dimension = static_cast<int>(m) - spec.n;
  Ideal sing(spec.ring, spec.equations);
  for (const auto& minor : maximal_minors(jacobian(spec.equations))) sing = sing.with(minor);
  r.smooth = groebner(sing, MonomialOrder::grevlex(), budget).is_unit();
  r.leading_form_dimension = dimension(Ideal(spec.ring, spec.leading_forms()), budget);
  return r;
}

/// Common zeros of all leading forms of X and Y.
inline Ideal cone_at_infinity(const VarietySpec& X, const VarietySpec& Y) {
  auto gens = X.leading_forms();
  for (const auto& g : Y.leading_forms()) gens.push_back(g.embed(X.ring, identity_map(X.ring->size())));
  return Ideal(X.ring, std::move(gens));
}

inline bool check_general_position(const MidpointProblem& problem, Budget& budget) {
  return dimension(cone_at_infinity(problem.X, problem.Y), budget) == 1;
}

/// The admissibility certificate: L does not vanish on the cone away from the origin.
inline bool is_admissible(const MidpointProblem& problem, const LinearForm& L, Budget& budget) {
  Ideal cone = cone_at_infinity(problem.X, problem.Y).with(L.on(problem.ring()));
  return dimension(cone, budget) <= 0;
}

inline LinearForm random_linear_form(std::size_t m, std::mt19937_64& rng, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  for (;;) {
    std::vector<Rational> c(m);
    bool nonzero = false;
    for (auto& x : c) {
      x = d(rng);
      nonzero |= sgn(x) != 0;
    }
    if (nonzero) return LinearForm(std::move(c));
  }
}

inline LinearForm choose_admissible_L(const MidpointProblem& problem, std::uint64_t seed, Budget& budget,
                                      int max_draws = 20) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < max_draws; ++k) {
    LinearForm L = random_linear_form(problem.m(), rng, 10);
    if (is_admissible(problem, L, budget)) return L;
  }
  throw RetriesExhausted("no admissible linear form found; the cone at infinity is larger than a union of lines");
}

namespace detail {

/// [df(x) 0; 0 dg(y); I/2 I/2] over the pair ring.
inline PolyMatrix phi_matrix(const MidpointProblem& problem, const RingPtr& pair) {
  std::size_t m = problem.m();
  auto f = problem.f_on_pair(pair), g = problem.g_on_pair(pair);
  PolyMatrix mat(pair, f.size() + g.size() + m, 2 * m);
  std::size_t row = 0;
  for (const auto& e : f) {
    for (std::size_t v = 0; v < m; ++v) mat(row, v) = e.derivative(v);
    ++row;
  }
  for (const auto& e : g) {
    for (std::size_t v = 0; v < m; ++v) mat(row, m + v) = e.derivative(m + v);
    ++row;
  }
  Polynomial half = Polynomial::constant(pair, make_rational(1, 2));
  for (std::size_t v = 0; v < m; ++v, ++row) {
    mat(row, v) = half;
    mat(row, m + v) = half;
  }
  return mat;
}

inline std::vector<Polynomial> on_variety(const MidpointProblem& problem, const RingPtr& pair) {
  auto gens = problem.f_on_pair(pair);
  for (auto& g : problem.g_on_pair(pair)) gens.push_back(std::move(g));
  return gens;
}

/// Rewrites an ideal on the pair ring in the coordinates (x, z) with y = 2z - x.
inline Ideal to_midpoint_coordinates(const Ideal& pair_ideal, std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("x" + std::to_string(i));
  for (std::size_t i = 1; i <= m; ++i) names.push_back("z" + std::to_string(i));
  RingPtr xz = make_ring(names);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < m; ++i) images.push_back(Polynomial::variable(xz, i));
  for (std::size_t i = 0; i < m; ++i)
    images.push_back(Polynomial::variable(xz, m + i) * Rational(2) - Polynomial::variable(xz, i));
  std::vector<Polynomial> gens;
  for (const auto& g : pair_ideal.nonzero_generators()) gens.push_back(g.substitute(images));
  return Ideal(xz, std::move(gens));
}

/// For an ideal in (s_1..s_k, z_1..z_q): the closure of the image in z of the points of the
/// projective closure in s lying at infinity. The source is homogenized through a Groebner
/// basis for an order refining s-degree; the irrelevant ideal of s is removed by a generic
/// affine chart l(s) = 1 before eliminating s.
inline Ideal nonproperness_of_projection(const Ideal& ideal, std::size_t k, Budget& budget, std::uint64_t seed) {
  const RingPtr& ring = ideal.ring();
  std::uint32_t mask = (std::uint32_t{1} << k) - 1;
  GroebnerBasis gb = groebner(ideal, MonomialOrder::block(mask), budget);
  std::vector<std::string> target_names(ring->names().begin() + static_cast<long>(k), ring->names().end());
  RingPtr target = make_ring(target_names);
  if (gb.is_unit()) return Ideal::unit(target);
  std::vector<Polynomial> at_infinity;
  for (const auto& p : gb.polynomials()) {
    int top = 0;
    for (const auto& t : p.terms()) {
      int d = 0;
      for (std::size_t v = 0; v < k; ++v) d += t.monomial[v];
      top = std::max(top, d);
    }
    std::vector<Term> keep;
    for (const auto& t : p.terms()) {
      int d = 0;
      for (std::size_t v = 0; v < k; ++v) d += t.monomial[v];
      if (d == top) keep.push_back(t);
    }
    at_infinity.push_back(Polynomial::from_terms(ring, std::move(keep)));
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(1, 9);
  std::vector<Rational> chart(ring->size(), Rational(0));
  for (std::size_t v = 0; v < k; ++v) chart[v] = d(rng) * ((rng() & 1) ? 1 : -1);
  at_infinity.push_back(linear_polynomial(ring, chart, Rational(-1)));
  std::vector<std::size_t> drop(k);
  for (std::size_t v = 0; v < k; ++v) drop[v] = v;
  Ideal out = eliminate(Ideal(ring, std::move(at_infinity)), drop, budget);
  return Ideal::from_basis(groebner(out, MonomialOrder::grevlex(), budget));
}


/// Least-degree nonzero element of I ∩ Q[v_first, ..., v_{first+k-1}], written in `target`
/// (k variables): the first linear dependency, degree by degree, among normal forms of
/// monomials in those variables modulo a grevlex basis of I.
inline std::optional<Polynomial> least_degree_eliminant(const GroebnerBasis& gb, std::size_t first,
                                                        const RingPtr& target, unsigned max_degree,
                                                        Budget& budget) {
  const RingPtr& ring = gb.ring();
  std::size_t k = target->size();
  struct Row {
    Polynomial v, combo;
  };
  std::vector<Row> rows;
  std::unordered_map<Monomial, std::size_t, MonomialHash> pivot;
  std::vector<std::pair<Monomial, Polynomial>> layer{{Monomial(k), gb.normal_form(Polynomial::constant(ring, 1))}};
  for (unsigned d = 0; d <= max_degree; ++d) {
    if (d > 0) {
      std::vector<std::pair<Monomial, Polynomial>> next;
      for (const auto& [mono, nf] : layer) {
        std::size_t last = 0;  // extend by variables >= the last one used, so each monomial appears once
        for (std::size_t v = 0; v < k; ++v)
          if (mono[v]) last = v;
        for (std::size_t v = last; v < k; ++v)
          next.emplace_back(mono * Monomial::variable(k, v),
                            gb.normal_form(nf * Polynomial::variable(ring, first + v)));
      }
      layer = std::move(next);
      budget.check_clock();
    }
    for (const auto& [mono, nf] : layer) {
      Polynomial v = nf;
      Polynomial combo = Polynomial::from_terms(target, {Term{mono, Rational(1)}});
      for (bool hit = true; hit && !v.is_zero();) {
        hit = false;
        for (const auto& t : v.terms()) {
          auto it = pivot.find(t.monomial);
          if (it == pivot.end()) continue;
          const Row& r = rows[it->second];
          Rational c = t.coefficient / r.v.terms().front().coefficient;
          v -= r.v * c;
          combo -= r.combo * c;
          hit = true;
          break;
        }
      }
      if (v.is_zero()) return combo.primitive();
      pivot.emplace(v.terms().front().monomial, rows.size());
      rows.push_back({std::move(v), std::move(combo)});
    }
  }
  return std::nullopt;
}

/// Restriction of the last k variables of `ring` to the line a + t b; the other variables are kept.
inline std::pair<RingPtr, std::vector<Polynomial>> line_images(const RingPtr& ring, std::size_t k,
                                                               const std::vector<Rational>& a,
                                                               const std::vector<Rational>& b) {
  std::size_t first = ring->size() - k;
  std::vector<std::string> names(ring->names().begin(), ring->names().begin() + static_cast<long>(first));
  RingPtr line = make_ring(names);
  line = extend_ring(line, {fresh_name(line, "t")});
  std::vector<Polynomial> images;
  for (std::size_t v = 0; v < first; ++v) images.push_back(Polynomial::variable(line, v));
  Polynomial t = Polynomial::variable(line, first);
  for (std::size_t i = 0; i < k; ++i) images.push_back(Polynomial::constant(line, a[i]) + t * b[i]);
  return {line, images};
}

/// Distinct values of t over the points of V(I) whose last k coordinates are a + t b;
/// nullopt when that set is not finite.
inline std::optional<std::size_t> distinct_values_on_line(const Ideal& ideal, std::size_t k,
                                                          const std::vector<Rational>& a,
                                                          const std::vector<Rational>& b, Budget& budget) {
  auto [line, images] = line_images(ideal.ring(), k, a, b);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.nonzero_generators()) gens.push_back(g.substitute(images));
  GroebnerBasis gb = groebner(line, gens, MonomialOrder::grevlex(), budget);
  if (gb.is_unit()) return 0;
  if (dimension_from_basis(gb) != 0) return std::nullopt;
  QuotientAlgebra algebra(std::move(gb));
  std::vector<Rational> t(line->size(), Rational(0));
  t.back() = 1;
  return algebra.characteristic_polynomial(t).squarefree_part().degree();
}

/// Distinct roots of h(a + t b), or nullopt when h vanishes on the whole line.
inline std::optional<std::size_t> distinct_roots_on_line(const Polynomial& h, const std::vector<Rational>& a,
                                                         const std::vector<Rational>& b) {
  RingPtr line = make_ring({"t"});
  std::vector<Polynomial> images;
  Polynomial t = Polynomial::variable(line, 0);
  for (std::size_t i = 0; i < a.size(); ++i) images.push_back(Polynomial::constant(line, a[i]) + t * b[i]);
  Polynomial r = h.substitute(images);
  if (r.is_zero()) return std::nullopt;
  return UPoly::from_polynomial(r, 0).squarefree_part().degree();
}

}  // namespace detail

/// Locus on X x Y where d Phi restricted to the tangent space of X x Y drops rank.
inline Ideal sing_phi(const MidpointProblem& problem) {
  RingPtr pair = problem.pair_ring();
  auto gens = detail::on_variety(problem, pair);
  for (auto& mnr : maximal_minors(detail::phi_matrix(problem, pair))) gens.push_back(std::move(mnr));
  return Ideal(pair, std::move(gens));
}

/// Critical locus of (Phi, L) on X x Y, with L applied to the x factor.
inline Ideal sing_phi_L(const MidpointProblem& problem) {
  RingPtr pair = problem.pair_ring();
  const LinearForm& L = problem.linear_form();
  PolyMatrix row(pair, 1, 2 * problem.m());
  for (std::size_t v = 0; v < problem.m(); ++v) row(0, v) = Polynomial::constant(pair, L.coefficients[v]);
  auto gens = detail::on_variety(problem, pair);
  gens.push_back(determinant(detail::phi_matrix(problem, pair).stacked(row)));
  return Ideal(pair, std::move(gens));
}

/// Closure of Sing(Phi, L) minus Sing(Phi).
inline Ideal surplus_locus(const MidpointProblem& problem, Budget& budget) {
  return saturate(sing_phi_L(problem), sing_phi(problem), budget);
}

/// Zariski closure of the critical values of Phi, in z1..zm.
///
/// When the closure is a hypersurface it is returned as the ideal of one equation h: the
/// least-degree element of the elimination ideal, accepted when h has exactly as many
/// distinct zeros on a random line as there are critical values on that line. Otherwise
/// the projection is computed by block elimination.
inline Ideal k0_closure(const MidpointProblem& problem, Budget& budget, std::uint64_t seed = 1) {
  std::size_t m = problem.m();
  RingPtr target = problem.target_ring();
  Ideal graph = detail::to_midpoint_coordinates(sing_phi(problem), m);
  GroebnerBasis gb = groebner(graph, MonomialOrder::grevlex(), budget);
  if (gb.is_unit()) return Ideal::unit(target);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> digit(-9, 9);
  std::vector<Rational> a(m), b(m);
  for (std::size_t i = 0; i < m; ++i) {
    a[i] = digit(rng);
    do b[i] = digit(rng);
    while (b[i] == 0);
  }
  auto on_line = detail::distinct_values_on_line(Ideal::from_basis(gb), m, a, b, budget);
  if (on_line && *on_line > 0) {
    auto h = detail::least_degree_eliminant(gb, m, target, static_cast<unsigned>(2 * *on_line), budget);
    if (h && detail::distinct_roots_on_line(*h, a, b) == on_line)
      return Ideal::from_basis(groebner(Ideal(target, {*h}), MonomialOrder::grevlex(), budget));
  }
  std::vector<std::size_t> drop(m);
  for (std::size_t v = 0; v < m; ++v) drop[v] = v;
  Ideal out = eliminate(graph, drop, budget);
  return Ideal::from_basis(groebner(out, MonomialOrder::grevlex(), budget));
}

/// Points of the target reached as limits of map(x_k) with x_k on V(variety) and |x_k| -> oo.
inline Ideal nonproperness_set(const Ideal& variety, const std::vector<Polynomial>& map, Budget& budget,
                               std::uint64_t seed = 1) {
  const RingPtr& src = variety.ring();
  std::vector<std::string> extra;
  RingPtr grown = src;
  for (std::size_t j = 0; j < map.size(); ++j) {
    std::string name = fresh_name(grown, "z" + std::to_string(j + 1));
    extra.push_back(name);
    grown = extend_ring(grown, {name});
  }
  RingPtr graph_ring = extend_ring(src, extra);
  auto embed = identity_map(src->size());
  std::vector<Polynomial> gens;
  for (const auto& g : variety.nonzero_generators()) gens.push_back(g.embed(graph_ring, embed));
  for (std::size_t j = 0; j < map.size(); ++j)
    gens.push_back(Polynomial::variable(graph_ring, src->size() + j) - map[j].embed(graph_ring, embed));
  return detail::nonproperness_of_projection(Ideal(graph_ring, std::move(gens)), src->size(), budget, seed);
}

/// Non-properness set of Phi restricted to the surplus locus, in z1..zm.
inline Ideal l_infinity(const MidpointProblem& problem, const Ideal& surplus, Budget& budget) {
  std::size_t m = problem.m();
  if (groebner(surplus, MonomialOrder::grevlex(), budget).is_unit()) return Ideal::unit(problem.target_ring());
  // On the graph, |(x, y)| -> oo with z bounded iff |x| -> oo, so x alone is the source.
  Ideal graph = detail::to_midpoint_coordinates(surplus, m);
  return detail::nonproperness_of_projection(graph, m, budget, problem.seed);
}

inline Ideal l_infinity(const MidpointProblem& problem, Budget& budget) {
  return l_infinity(problem, surplus_locus(problem, budget), budget);
}

struct DegreeBoundReport {
  std::vector<int> a, b;
  long product_bound = 0;
  std::optional<int> D, d, mu_XY, deg_L_infinity;

  std::optional<long> refined_bound() const {
    if (!D || !d || !mu_XY) return std::nullopt;
    return static_cast<long>(*D) + *d - *mu_XY;
  }
  bool empty_forced() const { return product_bound < 0; }
  /// deg L_infinity against every bound that is available.
  bool consistent() const {
    if (!deg_L_infinity) return true;
    long deg = *deg_L_infinity;
    if (deg > std::max(product_bound, 0L)) return false;
    if (auto r = refined_bound(); r && deg > std::max(*r, 0L)) return false;
    return true;
  }
};

inline DegreeBoundReport degree_bounds(const MidpointProblem& problem, std::optional<int> D = std::nullopt,
                                       std::optional<int> d = std::nullopt, std::optional<int> mu = std::nullopt,
                                       std::optional<int> deg_L_infinity = std::nullopt) {
  DegreeBoundReport r;
  r.a = problem.X.multi_degree();
  r.b = problem.Y.multi_degree();
  long prod = 1, sum = 0;
  for (int x : r.a) prod *= x, sum += x;
  for (int x : r.b) prod *= x, sum += x;
  sum -= 2 * static_cast<long>(r.a.size());
  r.product_bound = prod * sum - 1;
  r.D = D;
  r.d = d;
  r.mu_XY = mu;
  r.deg_L_infinity = deg_L_infinity;
  return r;
}

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Inverse by Gauss-Jordan; nullopt when singular.
inline std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  std::size_t n = a.size();
  RationalMatrix w = a, inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(w[piv][c]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(w[piv], w[c]);
    std::swap(inv[piv], inv[c]);
    Rational s = 1 / w[c][c];
    for (std::size_t k = 0; k < n; ++k) w[c][k] *= s, inv[c][k] *= s;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(w[r][c]) == 0) continue;
      Rational f = w[r][c];
      for (std::size_t k = 0; k < n; ++k) w[r][k] -= f * w[c][k], inv[r][k] -= f * inv[c][k];
    }
  }
  return inv;
}

/// Invertible m x m matrix with integer entries in [-5, 5].
inline RationalMatrix random_linear_map_H(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int k = 0; k < 10; ++k) {
    RationalMatrix h(m, std::vector<Rational>(m));
    for (auto& row : h)
      for (auto& x : row) x = d(rng);
    if (inverse(h)) return h;
  }
  throw RetriesExhausted("no invertible matrix in 10 draws");
}

/// Equations of H(V(Y)), namely g o H^-1.
inline VarietySpec apply_H(const VarietySpec& Y, const RationalMatrix& H) {
  auto inv = inverse(H);
  if (!inv) throw PreconditionError("linear map is not invertible");
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < H.size(); ++i) images.push_back(linear_polynomial(Y.ring, (*inv)[i], Rational(0)));
  std::vector<Polynomial> eqs;
  for (const auto& g : Y.equations) eqs.push_back(g.substitute(images));
  return VarietySpec(Y.ring, std::move(eqs), Y.n);
}

}  // namespace symdefect
