#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "symdefect/ideal.hpp"
#include "symdefect/matrix.hpp"
#include "symdefect/univariate.hpp"
#include "test_support.hpp"

using namespace symdefect;
using symdefect::testing::random_polynomial;

namespace {

Polynomial P(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(P(s, r));
  return Ideal(r, g);
}

// Same ideal: mutual containment through reduced bases.
bool same_ideal(const Ideal& a, const Ideal& b) {
  Budget budget;
  auto ga = groebner(a, MonomialOrder::grevlex(), budget);
  auto gb = groebner(b, MonomialOrder::grevlex(), budget);
  for (const auto& g : a.nonzero_generators())
    if (!gb.contains(g)) return false;
  for (const auto& g : b.nonzero_generators())
    if (!ga.contains(g)) return false;
  return true;
}

std::vector<std::string> rendered(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (const auto& p : gb.polynomials()) out.push_back(p.to_string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(Groebner, AlreadyABasis) {
  auto r = make_ring({"x", "y"});
  Budget b;
  auto gb = groebner(I(r, {"x^2", "x*y"}), MonomialOrder::grevlex(), b);
  EXPECT_EQ(rendered(gb), (std::vector<std::string>{"x*y", "x^2"}));
}

TEST(Groebner, LinearEliminationLex) {
  auto r = make_ring({"x", "y"});
  Budget b;
  auto gb = groebner(I(r, {"x + y", "x - y"}), MonomialOrder::lex(), b);
  EXPECT_EQ(rendered(gb), (std::vector<std::string>{"x", "y"}));
}

TEST(Groebner, PrincipalIdeal) {
  auto r = make_ring({"x"});
  for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex()}) {
    Budget b;
    auto gb = groebner(I(r, {"x^2 - 1"}), order, b);
    EXPECT_EQ(rendered(gb), (std::vector<std::string>{"x^2 - 1"}));
  }
}

TEST(Groebner, UnitAndZeroIdeals) {
  auto r = make_ring({"x", "y"});
  Budget b;
  EXPECT_TRUE(groebner(I(r, {"x", "x + 1"}), MonomialOrder::grevlex(), b).is_unit());
  EXPECT_TRUE(groebner(I(r, {"0"}), MonomialOrder::grevlex(), b).is_zero_ideal());
}

TEST(Groebner, BudgetExceededCarriesProgress) {
  auto r = make_ring({"x", "y", "z"});
  Budget tiny(2);
  try {
    groebner(I(r, {"x^3 - y*z + 1", "y^3 - x*z", "z^3 - x*y - 2"}), MonomialOrder::lex(), tiny);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.steps(), 2u);
    EXPECT_GT(e.basis_size(), 0u);
  }
}

TEST(Groebner, DeterministicOutput) {
  auto r = make_ring({"x", "y", "z"});
  Budget b1, b2;
  auto id = I(r, {"x^2 + y*z - 1", "x*y - z^2", "y^3 - x"});
  EXPECT_EQ(rendered(groebner(id, MonomialOrder::grevlex(), b1)), rendered(groebner(id, MonomialOrder::grevlex(), b2)));
}

TEST(Groebner, CriterionAndMembershipOnRandomIdeals) {
  auto r = make_ring({"a", "b", "c"});
  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(random_polynomial(r, rng, 2, 3, 5));
    for (auto order : {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(0b001)}) {
      Budget budget;
      auto gb = groebner(r, gens, order, budget);
      EXPECT_TRUE(satisfies_buchberger_criterion(gb));
      for (const auto& g : gens) EXPECT_TRUE(gb.contains(g));
      for (const auto& e : gb.elements()) EXPECT_EQ(e.front().coefficient, 1);
      // reduced: no term of an element is divisible by another element's leading monomial
      for (std::size_t i = 0; i < gb.size(); ++i) {
        for (std::size_t j = 0; j < gb.size(); ++j) {
          if (i == j) continue;
          for (const auto& t : gb.elements()[i]) EXPECT_FALSE(gb.elements()[j].front().monomial.divides(t.monomial));
        }
      }
    }
  }
}

TEST(NormalForm, Examples) {
  auto r = make_ring({"x", "y"});
  Budget b;
  auto g1 = groebner(I(r, {"x^2 - 1"}), MonomialOrder::grevlex(), b);
  EXPECT_EQ(g1.normal_form(P("x^2", r)), P("1", r));
  auto g2 = groebner(I(r, {"x", "y"}), MonomialOrder::grevlex(), b);
  EXPECT_TRUE(g2.normal_form(P("x + y", r)).is_zero());
  auto g3 = groebner(I(r, {"x"}), MonomialOrder::grevlex(), b);
  EXPECT_EQ(g3.normal_form(P("y", r)), P("y", r));
}

TEST(Eliminate, Examples) {
  auto r = make_ring({"x", "y"});
  Budget b;
  Ideal e1 = eliminate(I(r, {"y - x^2", "x - 1"}), {0}, b);
  ASSERT_EQ(e1.ring()->names(), std::vector<std::string>{"y"});
  ASSERT_EQ(e1.generators().size(), 1u);
  EXPECT_EQ(e1.generators()[0].primitive().to_string(), "y - 1");

  Ideal e2 = eliminate(I(r, {"x^2 + y^2 - 1", "x - y"}), {0}, b);
  ASSERT_EQ(e2.generators().size(), 1u);
  EXPECT_EQ(e2.generators()[0].primitive().to_string(), "2*y^2 - 1");
  EXPECT_THROW(eliminate(I(r, {"x"}), {0, 1}, b), PreconditionError);
}

TEST(Eliminate, SoundOnSolutions) {
  // Twisted cubic projection: eliminating x from (y - x^2, z - x^3) gives y^3 - z^2.
  auto r = make_ring({"x", "y", "z"});
  Budget b;
  Ideal e = eliminate(I(r, {"y - x^2", "z - x^3"}), {0}, b);
  for (double x : {0.3, -1.7, 2.5}) {
    std::vector<Complex> pt{x * x, x * x * x};
    for (const auto& g : e.generators()) EXPECT_LE(g.normalized_residual(pt), 1e-12);
  }
}

TEST(Eliminate, AgreesWithResultantRadical) {
  auto r = make_ring({"x", "y"});
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<int> coef(-5, 5);
  // x-monic of degree d with random lower part of total degree <= d
  auto random_monic = [&](unsigned d) {
    std::vector<Term> ts{{Monomial{d, 0}, 1}};
    for (unsigned ex = 0; ex < d; ++ex)
      for (unsigned ey = 0; ex + ey <= d; ++ey)
        if (rng() % 2) ts.push_back({Monomial{ex, ey}, Rational(coef(rng))});
    return Polynomial::from_terms(r, ts);
  };
  int checked = 0;
  for (int attempt = 0; checked < 25 && attempt < 200; ++attempt) {
    Polynomial p = random_monic(1 + static_cast<unsigned>(rng() % 3));
    Polynomial q = random_monic(1 + static_cast<unsigned>(rng() % 3));
    Polynomial res = resultant(p, q, 0);
    if (res.is_zero() || res.is_constant()) continue;
    Budget b;
    Ideal e = eliminate(Ideal(r, {p, q}), {0}, b);
    ASSERT_EQ(e.generators().size(), 1u);  // univariate ideals are principal
    UPoly h = UPoly::from_polynomial(e.generators()[0], 0).squarefree_part();
    UPoly rs = UPoly::from_polynomial(res, 1).squarefree_part();
    EXPECT_TRUE(UPoly::divmod(h, rs).second.is_zero());
    EXPECT_TRUE(UPoly::divmod(rs, h).second.is_zero());
    ++checked;
  }
  EXPECT_EQ(checked, 25);
}

TEST(Saturate, Examples) {
  auto r = make_ring({"x", "y"});
  Budget b;
  EXPECT_TRUE(same_ideal(saturate(I(r, {"x*y"}), I(r, {"x"}), b), I(r, {"y"})));
  EXPECT_TRUE(same_ideal(saturate(I(r, {"x^2"}), I(r, {"x"}), b), I(r, {"1"})));
  EXPECT_TRUE(same_ideal(saturate(I(r, {"x*(x - 1)"}), I(r, {"x - 1"}), b), I(r, {"x"})));
}

TEST(Intersect, TwoLines) {
  auto r = make_ring({"x", "y"});
  Budget b;
  EXPECT_TRUE(same_ideal(intersect(I(r, {"x"}), I(r, {"y"}), b), I(r, {"x*y"})));
}

TEST(Dimension, Examples) {
  auto r = make_ring({"x1", "x2", "x3"});
  Budget b;
  EXPECT_EQ(dimension(I(r, {"x1"}), b), 2);
  EXPECT_EQ(dimension(I(r, {"1"}), b), -1);
  EXPECT_EQ(dimension(I(r, {"x1^2 + x2^2", "x1^2 + 2*x2^2"}), b), 1);
  EXPECT_EQ(dimension(I(r, {"0"}), b), 3);
}

TEST(Dimension, MonotoneUnderAddingGenerators) {
  auto r = make_ring({"a", "b", "c", "d"});
  std::mt19937_64 rng(99);
  for (int chain = 0; chain < 10; ++chain) {
    Ideal acc = Ideal::zero(r);
    int previous = 4;
    for (int k = 0; k < 5; ++k) {
      acc = acc.with(random_polynomial(r, rng, 2, 3, 4));
      Budget b;
      int d = dimension(acc, b);
      EXPECT_LE(d, previous);
      previous = d;
    }
  }
}

TEST(IdealText, RoundTrip) {
  auto r = make_ring({"z1", "z2", "z3"});
  Ideal id = I(r, {"z3 - z1^2 - 4/3*z2^2 + 1/2", "z1*z2"});
  std::string text = id.to_text();
  EXPECT_EQ(text, "6*z1^2 + 8*z2^2 - 6*z3 - 3\nz1*z2\n");
  Ideal back = Ideal::parse(text, r);
  EXPECT_TRUE(same_ideal(id, back));
}
