#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "symdefect/errors.hpp"

namespace symdefect {

/// Exponent vector of a power product. Stored inline; the ring decides the length.
class Monomial {
 public:
  static constexpr std::size_t kMaxVariables = 32;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : size_(static_cast<std::uint8_t>(nvars)) {
    if (nvars > kMaxVariables) throw DimensionMismatch("too many variables");
  }
  Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
  }

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.set(index, power);
    return m;
  }

  std::size_t size() const noexcept { return size_; }
  unsigned degree() const noexcept { return degree_; }
  unsigned operator[](std::size_t i) const noexcept { return exps_[i]; }

  void set(std::size_t i, unsigned e) {
    degree_ = degree_ - exps_[i] + e;
    exps_[i] = static_cast<std::uint16_t>(e);
  }

  bool is_one() const noexcept { return degree_ == 0; }

  /// Bit i set iff variable i occurs.
  std::uint32_t support() const noexcept {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < size_; ++i)
      if (exps_[i]) mask |= std::uint32_t{1} << i;
    return mask;
  }

  bool divides(const Monomial& other) const noexcept {
    if (degree_ > other.degree_) return false;
    for (std::size_t i = 0; i < size_; ++i)
      if (exps_[i] > other.exps_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) r.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] + b.exps_[i]);
    r.degree_ = a.degree_ + b.degree_;
    return r;
  }

  /// Requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) r.exps_[i] = static_cast<std::uint16_t>(a.exps_[i] - b.exps_[i]);
    r.degree_ = a.degree_ - b.degree_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size_);
    for (std::size_t i = 0; i < a.size_; ++i) r.set(i, std::max(a.exps_[i], b.exps_[i]));
    return r;
  }

  static bool coprime(const Monomial& a, const Monomial& b) noexcept {
    for (std::size_t i = 0; i < a.size_; ++i)
      if (a.exps_[i] && b.exps_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.size_ == b.size_ && a.degree_ == b.degree_ &&
           std::equal(a.exps_.begin(), a.exps_.begin() + a.size_, b.exps_.begin());
  }

  std::size_t hash() const noexcept {
    std::size_t h = size_;
    for (std::size_t i = 0; i < size_; ++i) h = h * 1000003u + exps_[i];
    return h;
  }

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint8_t size_ = 0;
  unsigned degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Graded reverse lexicographic, lexicographic, or a two-block elimination order
/// (grevlex on the eliminated block, ties broken by grevlex on the rest).
class MonomialOrder {
 public:
  enum class Kind { GradedReverseLex, Lex, Block };

  static MonomialOrder grevlex() { return MonomialOrder(Kind::GradedReverseLex, 0); }
  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  /// Bit i of `eliminate` marks variable i as belonging to the first (larger) block.
  static MonomialOrder block(std::uint32_t eliminate) { return MonomialOrder(Kind::Block, eliminate); }

  Kind kind() const noexcept { return kind_; }
  std::uint32_t eliminated() const noexcept { return mask_; }

  /// Three-way comparison: positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const noexcept {
    switch (kind_) {
      case Kind::Lex:
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case Kind::GradedReverseLex:
        return grevlex_masked(a, b, ~std::uint32_t{0});
      case Kind::Block: {
        int c = grevlex_masked(a, b, mask_);
        if (c != 0) return c;
        return grevlex_masked(a, b, ~mask_);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const noexcept { return compare(a, b) > 0; }

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) noexcept {
    return a.kind_ == b.kind_ && a.mask_ == b.mask_;
  }

 private:
  MonomialOrder(Kind k, std::uint32_t mask) : kind_(k), mask_(mask) {}

  static int grevlex_masked(const Monomial& a, const Monomial& b, std::uint32_t mask) noexcept {
    unsigned da = 0, db = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mask & (std::uint32_t{1} << i)) {
        da += a[i];
        db += b[i];
      }
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (!(mask & (std::uint32_t{1} << i))) continue;
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  Kind kind_;
  std::uint32_t mask_;
};

}  // namespace symdefect
