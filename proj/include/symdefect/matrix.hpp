#pragma once

#include <bit>
#include <unordered_map>
#include <vector>

#include "symdefect/polynomial.hpp"

namespace symdefect {

/// Dense rows x cols grid of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix(RingPtr ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Polynomial(ring_)) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const RingPtr& ring() const noexcept { return ring_; }

  const Polynomial& operator()(std::size_t r, std::size_t c) const { return data_.at(r * cols_ + c); }
  Polynomial& operator()(std::size_t r, std::size_t c) { return data_.at(r * cols_ + c); }

  void set(std::size_t r, std::size_t c, Polynomial p) {
    if (!same_ring(p.ring(), ring_) && !p.is_zero()) throw DimensionMismatch("matrix entry from another ring");
    (*this)(r, c) = std::move(p);
  }

  /// Appends the rows of `below` (same column count).
  PolyMatrix stacked(const PolyMatrix& below) const {
    if (below.cols_ != cols_) throw DimensionMismatch("stacking matrices with different widths");
    PolyMatrix out(ring_, rows_ + below.rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    for (std::size_t r = 0; r < below.rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) out(rows_ + r, c) = below(r, c);
    return out;
  }

  Complex evaluate_entry(std::size_t r, std::size_t c, std::span<const Complex> point) const {
    return (*this)(r, c).evaluate(point);
  }

 private:
  RingPtr ring_;
  std::size_t rows_, cols_;
  std::vector<Polynomial> data_;
};

/// Entry (i, j) = d system[i] / d x_{variables[j]}.
inline PolyMatrix jacobian(const std::vector<Polynomial>& system, const std::vector<std::size_t>& variables) {
  if (system.empty()) throw DimensionMismatch("jacobian of an empty system");
  RingPtr ring = system.front().ring();
  for (const auto& p : system)
    if (!same_ring(p.ring(), ring)) throw DimensionMismatch("jacobian system spans several rings");
  PolyMatrix j(ring, system.size(), variables.size());
  for (std::size_t r = 0; r < system.size(); ++r)
    for (std::size_t c = 0; c < variables.size(); ++c) j(r, c) = system[r].derivative(variables[c]);
  return j;
}

inline PolyMatrix jacobian(const std::vector<Polynomial>& system) {
  if (system.empty()) throw DimensionMismatch("jacobian of an empty system");
  std::vector<std::size_t> vars(system.front().nvars());
  for (std::size_t i = 0; i < vars.size(); ++i) vars[i] = i;
  return jacobian(system, vars);
}

namespace detail {

// memo[mask] = det(rows 0..|mask|-1, columns in mask), expanding along the last row.
inline const Polynomial& minor_dp(const PolyMatrix& m, std::uint32_t mask,
                                  std::unordered_map<std::uint32_t, Polynomial>& memo) {
  auto it = memo.find(mask);
  if (it != memo.end()) return it->second;
  int size = std::popcount(mask);
  Polynomial det(m.ring());
  if (size == 0) {
    det = Polynomial::constant(m.ring(), 1);
  } else {
    std::size_t row = static_cast<std::size_t>(size - 1);
    int position = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!(mask & (std::uint32_t{1} << c))) continue;
      const Polynomial& entry = m(row, c);
      if (!entry.is_zero()) {
        const Polynomial& sub = minor_dp(m, mask & ~(std::uint32_t{1} << c), memo);
        if (!sub.is_zero()) {
          Polynomial term = entry * sub;
          if ((static_cast<int>(row) + position) % 2) det -= term;
          else det += term;
        }
      }
      ++position;
    }
  }
  return memo.emplace(mask, std::move(det)).first->second;
}

}  // namespace detail

inline Polynomial determinant(const PolyMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (m.cols() > 31) throw DimensionMismatch("matrix too large");
  std::unordered_map<std::uint32_t, Polynomial> memo;
  std::uint32_t full = m.cols() == 0 ? 0 : (std::uint32_t{1} << m.cols()) - 1;
  return detail::minor_dp(m, full, memo);
}

/// All rows x rows minors of a wide matrix (rows <= cols), columns in lexicographic subset order.
inline std::vector<Polynomial> maximal_minors(const PolyMatrix& m) {
  if (m.rows() > m.cols()) throw DimensionMismatch("maximal minors need rows <= cols");
  if (m.cols() > 31) throw DimensionMismatch("matrix too large");
  std::unordered_map<std::uint32_t, Polynomial> memo;
  std::vector<Polynomial> out;
  std::vector<std::size_t> pick(m.rows());
  for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  for (;;) {
    std::uint32_t mask = 0;
    for (auto c : pick) mask |= std::uint32_t{1} << c;
    out.push_back(detail::minor_dp(m, mask, memo));
    // next combination
    std::size_t k = pick.size();
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == m.cols() - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

/// Resultant of p and q with respect to variable `var`, as the Sylvester determinant.
inline Polynomial resultant(const Polynomial& p, const Polynomial& q, std::size_t var) {
  if (!same_ring(p.ring(), q.ring())) throw DimensionMismatch("resultant of polynomials from different rings");
  if (p.is_zero() || q.is_zero()) return Polynomial(p.ring());
  const RingPtr& ring = p.ring();
  auto coefficients = [&](const Polynomial& f) {
    std::vector<Polynomial> c(f.degree_in(var) + 1, Polynomial(ring));
    std::vector<std::vector<Term>> buckets(c.size());
    for (const auto& t : f.terms()) {
      Monomial m = t.monomial;
      unsigned e = m[var];
      m.set(var, 0);
      buckets[e].push_back({m, t.coefficient});
    }
    for (std::size_t e = 0; e < c.size(); ++e) c[e] = Polynomial::from_terms(ring, std::move(buckets[e]));
    return c;
  };
  auto a = coefficients(p), b = coefficients(q);
  std::size_t dp = a.size() - 1, dq = b.size() - 1;
  if (dp == 0 && dq == 0) return Polynomial::constant(ring, 1);
  if (dp == 0) return p.pow(static_cast<unsigned>(dq));
  if (dq == 0) return q.pow(static_cast<unsigned>(dp));
  std::size_t n = dp + dq;
  PolyMatrix s(ring, n, n);
  for (std::size_t r = 0; r < dq; ++r)
    for (std::size_t k = 0; k <= dp; ++k) s(r, r + k) = a[dp - k];
  for (std::size_t r = 0; r < dp; ++r)
    for (std::size_t k = 0; k <= dq; ++k) s(dq + r, r + k) = b[dq - k];
  return determinant(s);
}

}  // namespace symdefect
