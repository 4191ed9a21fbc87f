#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "symdefect/budget.hpp"
#include "symdefect/polynomial.hpp"

namespace symdefect {

namespace detail {

struct RationalField {
  using Coefficient = Rational;
  using TermType = Term;
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static bool is_one(const Rational& c) { return c == 1; }
  static Rational one() { return Rational(1); }
  static Rational inverse(const Rational& c) { return 1 / c; }
  static Rational mul(const Rational& a, const Rational& b) { return a * b; }
  static Rational neg(const Rational& a) { return -a; }
  static Rational sub_mul(const Rational& a, const Rational& s, const Rational& b) { return a - s * b; }
};

template <class T>
std::vector<T> sorted_terms(std::vector<T> t, const MonomialOrder& order) {
  std::sort(t.begin(), t.end(), [&](const T& a, const T& b) { return order.compare(a.monomial, b.monomial) > 0; });
  return t;
}

inline std::vector<Term> sorted_terms(const Polynomial& p, const MonomialOrder& order) {
  if (order.kind() == MonomialOrder::Kind::GradedReverseLex) return p.terms();
  return sorted_terms(p.terms(), order);
}

template <class F>
void make_monic(const F& field, std::vector<typename F::TermType>& t) {
  if (t.empty() || field.is_one(t.front().coefficient)) return;
  auto inv = field.inverse(t.front().coefficient);
  for (auto& term : t) term.coefficient = field.mul(term.coefficient, inv);
}

// t - coef * mono * g, skipping g's leading term (it cancels t's leading term by construction).
template <class F, class T = typename F::TermType>
std::vector<T> cancel_lead(const F& field, const std::vector<T>& t, std::size_t start,
                           const typename F::Coefficient& coef, const Monomial& mono, const std::vector<T>& g,
                           const MonomialOrder& order) {
  std::vector<T> r;
  r.reserve(t.size() - start + g.size());
  std::size_t i = start + 1, j = 1;
  while (i < t.size() || j < g.size()) {
    if (j == g.size()) {
      r.push_back(t[i++]);
      continue;
    }
    Monomial gm = g[j].monomial * mono;
    int c = i == t.size() ? -1 : order.compare(t[i].monomial, gm);
    if (c > 0) {
      r.push_back(t[i++]);
    } else if (c < 0) {
      r.push_back({gm, field.neg(field.mul(coef, g[j].coefficient))});
      ++j;
    } else {
      auto s = field.sub_mul(t[i].coefficient, coef, g[j].coefficient);
      if (!field.is_zero(s)) r.push_back({gm, std::move(s)});
      ++i;
      ++j;
    }
  }
  return r;
}

template <class F>
struct BasicReducer {
  using T = typename F::TermType;
  F field;
  const std::vector<std::vector<T>>* polys;
  const std::vector<std::uint32_t>* masks;
  const std::vector<char>* active;  // null: all usable

  long find(const Monomial& m) const {
    std::uint32_t sm = m.support();
    for (std::size_t k = 0; k < polys->size(); ++k) {
      if (active && !(*active)[k]) continue;
      if ((*masks)[k] & ~sm) continue;
      const auto& g = (*polys)[k];
      if (g.front().monomial.divides(m)) return static_cast<long>(k);
    }
    return -1;
  }

  // Full reduction; `sugar` (if given) is updated for the result.
  std::vector<T> reduce(std::vector<T> p, const MonomialOrder& order, unsigned* sugar,
                        const std::vector<unsigned>* sugars, Budget* budget, bool tail = true) const {
    std::vector<T> remainder;
    std::size_t start = 0;
    std::uint64_t steps = 0;
    while (start < p.size()) {
      const T& lead = p[start];
      long k = find(lead.monomial);
      if (k < 0) {
        if (!tail) {
          remainder.insert(remainder.end(), p.begin() + static_cast<long>(start), p.end());
          break;
        }
        remainder.push_back(lead);
        ++start;
        continue;
      }
      const auto& g = (*polys)[static_cast<std::size_t>(k)];
      Monomial mono = lead.monomial / g.front().monomial;
      auto coef = field.mul(lead.coefficient, field.inverse(g.front().coefficient));
      if (sugar && sugars) *sugar = std::max(*sugar, mono.degree() + (*sugars)[static_cast<std::size_t>(k)]);
      p = cancel_lead(field, p, start, coef, mono, g, order);
      start = 0;
      if (budget && (++steps & 1023) == 0) budget->check_clock(polys->size());
    }
    return remainder;
  }
};

using Reducer = BasicReducer<RationalField>;

}  // namespace detail

/// Reduced Groebner basis: monic elements, sorted by ascending leading monomial.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, MonomialOrder order, std::vector<std::vector<Term>> elements)
      : ring_(std::move(ring)), order_(order), elements_(std::move(elements)) {
    for (const auto& e : elements_) masks_.push_back(e.front().monomial.support());
  }

  const RingPtr& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return order_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<std::vector<Term>>& elements() const noexcept { return elements_; }

  bool is_unit() const noexcept {
    return elements_.size() == 1 && elements_.front().size() == 1 && elements_.front().front().monomial.is_one();
  }
  /// Basis of the zero ideal is empty.
  bool is_zero_ideal() const noexcept { return elements_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    for (const auto& e : elements_) out.push_back(e.front().monomial);
    return out;
  }

  std::vector<Polynomial> polynomials() const {
    std::vector<Polynomial> out;
    for (const auto& e : elements_) out.push_back(Polynomial::from_terms(ring_, e));
    return out;
  }

  Polynomial element(std::size_t i) const { return Polynomial::from_terms(ring_, elements_.at(i)); }

  /// Remainder of multivariate division by the basis; zero iff p lies in the ideal.
  Polynomial normal_form(const Polynomial& p) const {
    if (!p.is_zero() && !same_ring(p.ring(), ring_)) throw DimensionMismatch("normal form across rings");
    detail::Reducer red{{}, &elements_, &masks_, nullptr};
    auto r = red.reduce(detail::sorted_terms(p, order_), order_, nullptr, nullptr, nullptr);
    return Polynomial::from_terms(ring_, std::move(r));
  }

  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }

  /// True when m is not divisible by any leading monomial.
  bool is_standard(const Monomial& m) const {
    for (const auto& e : elements_)
      if (e.front().monomial.divides(m)) return false;
    return true;
  }

 private:
  RingPtr ring_;
  MonomialOrder order_;
  std::vector<std::vector<Term>> elements_;
  std::vector<std::uint32_t> masks_;
};

namespace detail {

/// Buchberger with the sugar strategy and Gebauer-Moeller criteria over the field `F`.
/// run() returns the reduced basis (monic, ascending leading monomials), or {1}.
template <class F>
class BasicBuchberger {
 public:
  using T = typename F::TermType;
  using Poly = std::vector<T>;

  BasicBuchberger(F field, std::size_t nvars, MonomialOrder order, Budget& budget)
      : field_(std::move(field)), nvars_(nvars), order_(order), budget_(budget) {}

  std::vector<Poly> run(std::vector<Poly> input) {
    for (auto& f : input) f = sorted_terms(std::move(f), order_);
    std::erase_if(input, [](const Poly& f) { return f.empty(); });
    // smallest leading monomials first
    std::stable_sort(input.begin(), input.end(), [&](const auto& a, const auto& b) {
      return order_.compare(a.front().monomial, b.front().monomial) < 0;
    });
    for (auto& f : input) {
      unsigned sugar = total_degree(f);
      auto r = reducer().reduce(std::move(f), order_, &sugar, &sugars_, &budget_);
      if (!r.empty() && insert(std::move(r), sugar)) return unit();
    }
    while (!pairs_.empty()) {
      std::size_t best = select();
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      budget_.charge(1, polys_.size(), pairs_.size());
      auto s = spoly(pr);
      unsigned sugar = pr.sugar;
      auto r = reducer().reduce(std::move(s), order_, &sugar, &sugars_, &budget_);
      if (!r.empty() && insert(std::move(r), sugar)) return unit();
    }
    return finish();
  }

 private:
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };

  BasicReducer<F> reducer() const { return {field_, &polys_, &masks_, &active_}; }

  static unsigned total_degree(const Poly& t) {
    unsigned d = 0;
    for (const auto& x : t) d = std::max(d, x.monomial.degree());
    return d;
  }

  std::vector<Poly> unit() const { return {{T{Monomial(nvars_), field_.one()}}}; }

  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const Pair& a = pairs_[k];
      const Pair& b = pairs_[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = k;
        continue;
      }
      int c = order_.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::make_pair(a.i, a.j) < std::make_pair(b.i, b.j))) best = k;
    }
    return best;
  }

  Poly spoly(const Pair& pr) const {
    const auto& f = polys_[pr.i];
    const auto& g = polys_[pr.j];
    Monomial mf = pr.lcm / f.front().monomial;
    Monomial mg = pr.lcm / g.front().monomial;
    // both monic: S = mf*f - mg*g; shift f and cancel its (virtual) lead against mg*g
    Poly a;
    a.reserve(f.size());
    for (const auto& t : f) a.push_back({t.monomial * mf, t.coefficient});
    return cancel_lead(field_, a, 0, field_.one(), mg, g, order_);
  }

  // Returns true when a constant was found.
  bool insert(Poly h, unsigned sugar) {
    make_monic(field_, h);
    if (h.front().monomial.is_one()) return true;
    std::size_t hi = polys_.size();
    const Monomial lh = h.front().monomial;
    polys_.push_back(std::move(h));
    masks_.push_back(lh.support());
    sugars_.push_back(sugar);
    active_.push_back(1);

    // Gebauer-Moeller installation
    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < hi; ++g) {
      if (!active_[g]) continue;
      Monomial l = Monomial::lcm(polys_[g].front().monomial, lh);
      candidates.push_back({g, hi, l, pair_sugar(g, hi, l)});
    }
    std::vector<Pair> kept;
    std::vector<char> alive(candidates.size(), 1);
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      const Pair& p = candidates[a];
      bool keep = Monomial::coprime(polys_[p.i].front().monomial, lh);
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < candidates.size() && keep; ++b)
          if (alive[b] && candidates[b].lcm.divides(p.lcm)) keep = false;
        for (const auto& q : kept)
          if (keep && q.lcm.divides(p.lcm)) keep = false;
      }
      if (keep) kept.push_back(p);
      else alive[a] = 0;
    }
    std::vector<Pair> old;
    old.reserve(pairs_.size());
    for (auto& p : pairs_) {
      bool drop = lh.divides(p.lcm) &&
                  !(Monomial::lcm(polys_[p.i].front().monomial, lh) == p.lcm) &&
                  !(Monomial::lcm(polys_[p.j].front().monomial, lh) == p.lcm);
      if (!drop) old.push_back(std::move(p));
    }
    pairs_ = std::move(old);
    for (auto& p : kept)
      if (!Monomial::coprime(polys_[p.i].front().monomial, lh)) pairs_.push_back(std::move(p));
    for (std::size_t g = 0; g < hi; ++g)
      if (active_[g] && lh.divides(polys_[g].front().monomial)) active_[g] = 0;
    return false;
  }

  unsigned pair_sugar(std::size_t i, std::size_t j, const Monomial& lcm) const {
    unsigned a = sugars_[i] + lcm.degree() - polys_[i].front().monomial.degree();
    unsigned b = sugars_[j] + lcm.degree() - polys_[j].front().monomial.degree();
    return std::max(a, b);
  }

  std::vector<Poly> finish() {
    std::vector<Poly> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k)
      if (active_[k]) basis.push_back(polys_[k]);
    // interreduce tails
    std::vector<std::uint32_t> masks;
    for (const auto& b : basis) masks.push_back(b.front().monomial.support());
    std::vector<Poly> reduced;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      std::vector<char> others(basis.size(), 1);
      others[k] = 0;
      BasicReducer<F> red{field_, &basis, &masks, &others};
      Poly tail(basis[k].begin() + 1, basis[k].end());
      auto r = red.reduce(std::move(tail), order_, nullptr, nullptr, &budget_);
      r.insert(r.begin(), basis[k].front());
      reduced.push_back(std::move(r));
    }
    std::sort(reduced.begin(), reduced.end(), [&](const auto& a, const auto& b) {
      return order_.compare(a.front().monomial, b.front().monomial) < 0;
    });
    return reduced;
  }

  F field_;
  std::size_t nvars_;
  MonomialOrder order_;
  Budget& budget_;
  std::vector<Poly> polys_;
  std::vector<std::uint32_t> masks_;
  std::vector<unsigned> sugars_;
  std::vector<char> active_;
  std::vector<Pair> pairs_;
};

inline std::vector<std::vector<Term>> term_lists(const RingPtr& ring, const std::vector<Polynomial>& gens) {
  std::vector<std::vector<Term>> out;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    if (!same_ring(g.ring(), ring)) throw DimensionMismatch("generators from different rings");
    out.push_back(g.terms());
  }
  return out;
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by `generators` (Buchberger, sugar strategy).
inline GroebnerBasis groebner(const RingPtr& ring, const std::vector<Polynomial>& generators,
                              const MonomialOrder& order, Budget& budget) {
  auto basis = detail::BasicBuchberger<detail::RationalField>({}, ring->size(), order, budget)
                   .run(detail::term_lists(ring, generators));
  return GroebnerBasis(ring, order, std::move(basis));
}

/// Every S-polynomial of the basis reduces to zero (Buchberger's criterion; coprime pairs skipped).
inline bool satisfies_buchberger_criterion(const GroebnerBasis& gb) {
  const auto& el = gb.elements();
  const auto& order = gb.order();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      if (Monomial::coprime(el[i].front().monomial, el[j].front().monomial)) continue;
      Monomial l = Monomial::lcm(el[i].front().monomial, el[j].front().monomial);
      Monomial mi = l / el[i].front().monomial, mj = l / el[j].front().monomial;
      std::vector<Term> a, b;
      for (const auto& t : el[i]) a.push_back({t.monomial * mi, t.coefficient / el[i].front().coefficient});
      for (const auto& t : el[j]) b.push_back({t.monomial * mj, t.coefficient / el[j].front().coefficient});
      Polynomial s = Polynomial::from_terms(gb.ring(), detail::add_scaled(a, b, Rational(-1), order));
      if (!gb.normal_form(s).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace symdefect
