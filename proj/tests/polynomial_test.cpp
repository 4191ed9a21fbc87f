#include <gtest/gtest.h>

#include <random>

#include "symdefect/matrix.hpp"
#include "symdefect/parser.hpp"
#include "test_support.hpp"

using namespace symdefect;
using symdefect::testing::random_complex_point;
using symdefect::testing::random_polynomial;

namespace {

RingPtr ring3() { return make_ring({"x1", "x2", "x3"}); }

Polynomial P(const std::string& s, const RingPtr& r) { return parse_polynomial(s, r); }

Rational coefficient_of(const Polynomial& p, const Monomial& m) {
  for (const auto& t : p.terms())
    if (t.monomial == m) return t.coefficient;
  return 0;
}

}  // namespace

TEST(Parse, SimpleDifference) {
  auto r = make_ring({"x1", "x2"});
  Polynomial p = P("x1^2 - x2", r);
  ASSERT_EQ(p.term_count(), 2u);
  EXPECT_EQ(coefficient_of(p, Monomial{2, 0}), 1);
  EXPECT_EQ(coefficient_of(p, Monomial{0, 1}), -1);
}

TEST(Parse, ZeroLiteral) {
  auto r = make_ring({"x1"});
  EXPECT_TRUE(P("0", r).is_zero());
  EXPECT_EQ(P("0", r).total_degree(), kZeroPolynomialDegree);
}

TEST(Parse, RationalLiteral) {
  auto r = ring3();
  Polynomial p = P("3/2*x1*x3 + x2^2", r);
  ASSERT_EQ(p.term_count(), 2u);
  EXPECT_EQ(coefficient_of(p, Monomial{1, 0, 1}), make_rational(3, 2));
  EXPECT_EQ(coefficient_of(p, Monomial{0, 2, 0}), 1);
}

TEST(Parse, ParenthesesAndPowers) {
  auto r = make_ring({"x", "y"});
  EXPECT_EQ(P("(x + y)^2", r), P("x^2 + 2*x*y + y^2", r));
  EXPECT_EQ(P("-x^2", r), P("-(x^2)", r));
  EXPECT_EQ(P("  x *  y ", r), P("x*y", r));
  EXPECT_EQ(P("4/6", r), Polynomial::constant(r, make_rational(2, 3)));
}

TEST(Parse, SyntaxErrorsCarryOffset) {
  auto r = make_ring({"x", "y"});
  try {
    P("x + * y", r);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
  try {
    P("x^y", r);
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(P("2 x", r), SyntaxError);  // no implicit multiplication
  EXPECT_THROW(P("(x + y", r), SyntaxError);
  EXPECT_THROW(P("1/0", r), SyntaxError);
  EXPECT_THROW(P("", r), SyntaxError);
}

TEST(Parse, UnknownVariableNamed) {
  auto r = make_ring({"x", "y"});
  try {
    P("x + zeta", r);
    FAIL();
  } catch (const UnknownVariableError& e) {
    EXPECT_EQ(e.name(), "zeta");
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Render, CanonicalText) {
  auto r = ring3();
  EXPECT_EQ(P("x2 - x1^2", r).to_string(), "-x1^2 + x2");
  EXPECT_EQ(P("x3 - x1^2 - 4/3*x2^2 + 1/2", r).to_string(), "-x1^2 - 4/3*x2^2 + x3 + 1/2");
  EXPECT_EQ(P("0", r).to_string(), "0");
  EXPECT_EQ(P("-7", r).to_string(), "-7");
}

TEST(Render, ParseRenderRoundTrip) {
  auto r = make_ring({"a", "b", "c", "d"});
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    Polynomial p = random_polynomial(r, rng, 5, 6);
    EXPECT_EQ(P(p.to_string(), r), p) << p.to_string();
  }
}

TEST(HighestComponent, Examples) {
  auto r = make_ring({"x1", "x2"});
  EXPECT_EQ(P("x1^2 + x2", r).highest_homogeneous_component(), P("x1^2", r));
  EXPECT_EQ(P("5", r).highest_homogeneous_component(), P("5", r));
  EXPECT_EQ(P("x1*x2 + x1 + 1", r).highest_homogeneous_component(), P("x1*x2", r));
  EXPECT_THROW(P("0", r).highest_homogeneous_component(), ZeroPolynomialError);
}

TEST(HighestComponent, MultiplicativeAndHomogeneous) {
  auto r = ring3();
  std::mt19937_64 rng(5);
  for (int k = 0; k < 100; ++k) {
    Polynomial p = random_polynomial(r, rng, 4, 5), q = random_polynomial(r, rng, 4, 5);
    if (p.is_zero() || q.is_zero()) continue;
    Polynomial lead = p.highest_homogeneous_component();
    EXPECT_TRUE(lead.is_homogeneous());
    EXPECT_EQ(lead.total_degree(), p.total_degree());
    EXPECT_EQ((p * q).highest_homogeneous_component(),
              p.highest_homogeneous_component() * q.highest_homogeneous_component());
  }
}

TEST(Arithmetic, RingAxiomsOnRandomTriples) {
  auto r = ring3();
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    Polynomial a = random_polynomial(r, rng, 3, 4), b = random_polynomial(r, rng, 3, 4),
               c = random_polynomial(r, rng, 3, 4);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a + (-a)).is_zero());
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(Jacobian, Examples) {
  auto r2 = make_ring({"x1", "x2"});
  auto j = jacobian({P("x1^2 + x2", r2)});
  EXPECT_EQ(j(0, 0), P("2*x1", r2));
  EXPECT_EQ(j(0, 1), P("1", r2));

  auto r = ring3();
  auto k = jacobian({P("x3 - x1^2 - x2^2", r)});
  EXPECT_EQ(k(0, 0), P("-2*x1", r));
  EXPECT_EQ(k(0, 1), P("-2*x2", r));
  EXPECT_EQ(k(0, 2), P("1", r));

  auto m = jacobian({P("x1*x2", r2)});
  EXPECT_EQ(m(0, 0), P("x2", r2));
  EXPECT_EQ(m(0, 1), P("x1", r2));
}

TEST(Jacobian, ContextMismatch) {
  EXPECT_THROW(jacobian({P("x1", ring3()), P("x", make_ring({"x"}))}), DimensionMismatch);
}

TEST(Derivative, MatchesCentralDifference) {
  auto r = ring3();
  std::mt19937_64 rng(3);
  const double h = 1e-5;
  for (int k = 0; k < 10; ++k) {
    Polynomial p = random_polynomial(r, rng, 4, 6);
    for (std::size_t v = 0; v < 3; ++v) {
      Polynomial dp = p.derivative(v);
      for (int s = 0; s < 20; ++s) {
        auto z = random_complex_point(3, rng);
        auto zp = z, zm = z;
        zp[v] += h;
        zm[v] -= h;
        Complex fd = (p.evaluate(zp) - p.evaluate(zm)) / (2 * h);
        Complex exact = dp.evaluate(z);
        double scale = std::max(1.0, std::abs(exact));
        EXPECT_LE(std::abs(fd - exact) / scale, 1e-6);
      }
    }
  }
}

TEST(Evaluate, Examples) {
  auto r = make_ring({"x1", "x2"});
  std::vector<Complex> a{2.0, 1.0};
  EXPECT_NEAR(std::abs(P("x1^2 + x2", r).evaluate(a) - Complex(5, 0)), 0.0, 1e-15);
  std::vector<Complex> b{Complex(0, 1), 1.0};
  EXPECT_NEAR(std::abs(P("x1^2 + x2^2", r).evaluate(b)), 0.0, 1e-15);
  EXPECT_EQ(P("0", r).evaluate(b), Complex(0, 0));
  std::vector<Complex> bad{1.0};
  EXPECT_THROW(P("x1", r).evaluate(bad), DimensionMismatch);
}

TEST(Substitute, ComposesAndEmbeds) {
  auto r = make_ring({"x", "y"});
  Polynomial p = P("x^2 - y", r);
  Polynomial q = p.substitute({P("x + y", r), P("2", r)});
  EXPECT_EQ(q, P("x^2 + 2*x*y + y^2 - 2", r));
  auto big = make_ring({"a", "x", "b", "y"});
  EXPECT_EQ(p.embed(big, {1, 3}), P("x^2 - y", big));
}

TEST(Determinant, SmallMatrices) {
  auto r = make_ring({"a", "b", "c", "d"});
  PolyMatrix m(r, 2, 2);
  m(0, 0) = P("a", r);
  m(0, 1) = P("b", r);
  m(1, 0) = P("c", r);
  m(1, 1) = P("d", r);
  EXPECT_EQ(determinant(m), P("a*d - b*c", r));

  PolyMatrix w(r, 2, 3);
  w(0, 0) = P("1", r);
  w(0, 1) = P("a", r);
  w(0, 2) = P("b", r);
  w(1, 0) = P("0", r);
  w(1, 1) = P("c", r);
  w(1, 2) = P("d", r);
  auto minors = maximal_minors(w);
  ASSERT_EQ(minors.size(), 3u);
  EXPECT_EQ(minors[0], P("c", r));
  EXPECT_EQ(minors[1], P("d", r));
  EXPECT_EQ(minors[2], P("a*d - b*c", r));
}

TEST(Resultant, CommonRootDetection) {
  auto r = make_ring({"x", "y"});
  // x^2 - y and x - 1 share a root iff y = 1
  EXPECT_EQ(resultant(P("x^2 - y", r), P("x - 1", r), 0), P("1 - y", r));
  Polynomial res = resultant(P("x^2 + y^2 - 1", r), P("x - y", r), 0);
  EXPECT_EQ(res.primitive(), P("2*y^2 - 1", r));
}
