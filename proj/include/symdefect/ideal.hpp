#pragma once

#include <bit>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "symdefect/groebner.hpp"
#include "symdefect/parser.hpp"

namespace symdefect {

/// Generators of an ideal over one ring. The zero ideal is the list {0}.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), gens_(std::move(generators)) {
    for (const auto& g : gens_)
      if (!g.is_zero() && !same_ring(g.ring(), ring_)) throw DimensionMismatch("ideal generator from another ring");
    if (gens_.empty()) gens_.push_back(Polynomial(ring_));
  }

  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal zero(const RingPtr& ring) { return Ideal(ring, {Polynomial(ring)}); }
  static Ideal from_basis(const GroebnerBasis& gb) { return Ideal(gb.ring(), gb.polynomials()); }

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return gens_; }

  /// Nonzero generators only.
  std::vector<Polynomial> nonzero_generators() const {
    std::vector<Polynomial> out;
    for (const auto& g : gens_)
      if (!g.is_zero()) out.push_back(g);
    return out;
  }

  bool has_unit_generator() const {
    for (const auto& g : gens_)
      if (!g.is_zero() && g.is_constant()) return true;
    return false;
  }
  bool is_zero_generated() const { return nonzero_generators().empty(); }

  Ideal operator+(const Ideal& other) const {
    if (!same_ring(ring_, other.ring_)) throw DimensionMismatch("sum of ideals from different rings");
    auto g = nonzero_generators();
    for (const auto& p : other.nonzero_generators()) g.push_back(p);
    return Ideal(ring_, std::move(g));
  }
  Ideal with(const Polynomial& p) const { return *this + Ideal(ring_, {p}); }

  /// One canonical polynomial per line, integer-normalized coefficients.
  std::string to_text() const {
    std::ostringstream os;
    for (const auto& g : gens_) os << g.primitive().to_string() << '\n';
    return os.str();
  }

  static Ideal parse(std::string_view text, const RingPtr& ring) {
    std::vector<Polynomial> gens;
    std::size_t offset = 0;
    while (offset <= text.size()) {
      std::size_t end = text.find('\n', offset);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(offset, end - offset);
      if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
        try {
          gens.push_back(parse_polynomial(line, ring));
        } catch (const SyntaxError& e) {
          throw SyntaxError("ideal line: invalid polynomial", offset + e.offset());
        } catch (const UnknownVariableError& e) {
          throw UnknownVariableError(e.name(), offset + e.offset());
        }
      }
      if (end == text.size()) break;
      offset = end + 1;
    }
    return Ideal(ring, std::move(gens));
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

inline GroebnerBasis groebner(const Ideal& ideal, const MonomialOrder& order, Budget& budget) {
  return groebner(ideal.ring(), ideal.nonzero_generators(), order, budget);
}

/// Ring obtained by appending fresh variable names.
inline RingPtr extend_ring(const RingPtr& ring, const std::vector<std::string>& extra) {
  auto names = ring->names();
  for (const auto& e : extra) names.push_back(e);
  return make_ring(std::move(names));
}

/// A variable name not used by `ring`, derived from `stem`.
inline std::string fresh_name(const RingPtr& ring, const std::string& stem) {
  std::string name = stem;
  for (int k = 0; ring->index_of(name); ++k) name = stem + std::to_string(k);
  return name;
}

inline std::vector<std::size_t> identity_map(std::size_t n) {
  std::vector<std::size_t> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

/// Generators of I ∩ Q[remaining variables], expressed in the ring of the remaining
/// variables (names and relative order preserved). Computed with a block elimination order.
inline Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& drop, Budget& budget) {
  const RingPtr& ring = ideal.ring();
  std::uint32_t mask = 0;
  for (auto v : drop) {
    if (v >= ring->size()) throw DimensionMismatch("elimination variable out of range");
    mask |= std::uint32_t{1} << v;
  }
  if (std::popcount(mask) >= static_cast<int>(ring->size()))
    throw PreconditionError("cannot eliminate every variable");
  std::vector<std::string> kept_names;
  std::vector<std::size_t> position(ring->size(), 0);
  for (std::size_t v = 0; v < ring->size(); ++v) {
    if (mask & (std::uint32_t{1} << v)) continue;
    position[v] = kept_names.size();
    kept_names.push_back(ring->name(v));
  }
  RingPtr sub = make_ring(kept_names);
  GroebnerBasis gb = groebner(ideal, MonomialOrder::block(mask), budget);
  std::vector<Polynomial> out;
  for (const auto& e : gb.elements()) {
    if (e.front().monomial.support() & mask) continue;  // block order: lead free of dropped vars => all terms free
    std::vector<Term> terms;
    for (const auto& t : e) {
      Monomial m(sub->size());
      for (std::size_t v = 0; v < ring->size(); ++v)
        if (t.monomial[v]) m.set(position[v], t.monomial[v]);
      terms.push_back({m, t.coefficient});
    }
    out.push_back(Polynomial::from_terms(sub, std::move(terms)));
  }
  return Ideal(sub, std::move(out));
}

/// Re-labels an ideal living in a ring with the same variable count onto `target`.
inline Ideal rename_ring(const Ideal& ideal, const RingPtr& target) {
  if (target->size() != ideal.ring()->size()) throw DimensionMismatch("rename between rings of different size");
  std::vector<Polynomial> out;
  for (const auto& g : ideal.generators()) out.push_back(g.embed(target, identity_map(target->size())));
  return Ideal(target, std::move(out));
}

/// I ∩ J via t*I + (1-t)*J and elimination of t.
inline Ideal intersect(const Ideal& a, const Ideal& b, Budget& budget) {
  if (!same_ring(a.ring(), b.ring())) throw DimensionMismatch("intersection of ideals from different rings");
  const RingPtr& ring = a.ring();
  if (a.has_unit_generator()) return b;
  if (b.has_unit_generator()) return a;
  RingPtr ext = extend_ring(ring, {fresh_name(ring, "_t")});
  std::size_t t = ring->size();
  auto map = identity_map(ring->size());
  Polynomial tv = Polynomial::variable(ext, t);
  Polynomial one_minus_t = Polynomial::constant(ext, 1) - tv;
  std::vector<Polynomial> gens;
  for (const auto& g : a.nonzero_generators()) gens.push_back(tv * g.embed(ext, map));
  for (const auto& g : b.nonzero_generators()) gens.push_back(one_minus_t * g.embed(ext, map));
  return rename_ring(eliminate(Ideal(ext, std::move(gens)), {t}, budget), ring);
}

/// I : f^∞ by the auxiliary-variable trick (1 - t f), eliminating t.
inline Ideal saturate_by_element(const Ideal& ideal, const Polynomial& f, Budget& budget) {
  const RingPtr& ring = ideal.ring();
  if (f.is_zero()) return Ideal::unit(ring);
  if (f.is_constant()) return ideal;
  RingPtr ext = extend_ring(ring, {fresh_name(ring, "_t")});
  std::size_t t = ring->size();
  auto map = identity_map(ring->size());
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.nonzero_generators()) gens.push_back(g.embed(ext, map));
  gens.push_back(Polynomial::constant(ext, 1) - Polynomial::variable(ext, t) * f.embed(ext, map));
  Ideal sat = rename_ring(eliminate(Ideal(ext, std::move(gens)), {t}, budget), ring);
  GroebnerBasis gb = groebner(sat, MonomialOrder::grevlex(), budget);
  return Ideal::from_basis(gb);
}

/// I : J^∞ = ∩_j (I : j^∞) over the generators j of J.
inline Ideal saturate(const Ideal& ideal, const Ideal& by, Budget& budget) {
  if (!same_ring(ideal.ring(), by.ring())) throw DimensionMismatch("saturation across rings");
  const RingPtr& ring = ideal.ring();
  GroebnerBasis base = groebner(ideal, MonomialOrder::grevlex(), budget);
  if (base.is_unit()) return Ideal::unit(ring);
  std::optional<Ideal> acc;
  for (const auto& j : by.nonzero_generators()) {
    if (base.contains(j)) continue;  // I : j^∞ is the unit ideal
    Ideal part = saturate_by_element(Ideal::from_basis(base), j, budget);
    acc = acc ? intersect(*acc, part, budget) : part;
  }
  if (!acc) return Ideal::unit(ring);
  return Ideal::from_basis(groebner(*acc, MonomialOrder::grevlex(), budget));
}

/// Size of a largest set of variables independent modulo the leading-term ideal.
inline int dimension_from_basis(const GroebnerBasis& gb) {
  std::size_t m = gb.ring()->size();
  if (gb.is_unit()) return -1;
  std::vector<std::uint32_t> supports;
  for (const auto& lm : gb.leading_monomials()) supports.push_back(lm.support());
  if (supports.empty()) return static_cast<int>(m);
  int best = 0;
  std::uint32_t full = m >= 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << m) - 1;
  // Search subsets of the complement of each candidate, largest first.
  for (int size = static_cast<int>(m); size > 0 && best == 0; --size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    for (;;) {
      std::uint32_t u = 0;
      for (int c : pick) u |= std::uint32_t{1} << c;
      bool independent = true;
      for (auto s : supports)
        if ((s & ~u & full) == 0) {
          independent = false;
          break;
        }
      if (independent) {
        best = size;
        break;
      }
      int i = size;
      while (i > 0 && pick[static_cast<std::size_t>(i - 1)] == static_cast<int>(m) - size + i - 1) --i;
      if (i == 0) break;
      ++pick[static_cast<std::size_t>(i - 1)];
      for (int j = i; j < size; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return best;
}

/// Krull dimension of V(I); -1 for the unit ideal.
inline int dimension(const Ideal& ideal, Budget& budget) {
  return dimension_from_basis(groebner(ideal, MonomialOrder::grevlex(), budget));
}

}  // namespace symdefect
