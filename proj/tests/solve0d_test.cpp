#include <gtest/gtest.h>

#include <random>

#include "symdefect/solve0d.hpp"
#include "test_support.hpp"

using namespace symdefect;

namespace {

Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> g;
  for (auto s : gens) g.push_back(parse_polynomial(s, r));
  return Ideal(r, g);
}

bool near(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST(Univariate, SquarefreeDecomposition) {
  // (T - 1)(T + 2)^2 (T - 3)^3
  UPoly a({Rational(-1), Rational(1)}), b({Rational(2), Rational(1)}), c({Rational(-3), Rational(1)});
  UPoly f = a * b * b * c * c * c;
  auto parts = f.squarefree_decomposition();
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], a);
  EXPECT_EQ(parts[1], b);
  EXPECT_EQ(parts[2], c);
  EXPECT_EQ(f.squarefree_part(), a * b * c);
}

TEST(Univariate, AberthRootsOfRandomSquarefree) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> d(-20, 20);
  for (int k = 0; k < 20; ++k) {
    std::vector<Rational> coefficients(8);
    for (auto& x : coefficients) x = d(rng);
    coefficients.back() = 1 + (rng() % 5);
    UPoly p(coefficients);
    auto roots = aberth_roots(p);
    ASSERT_EQ(roots.size(), 7u);
    for (auto z : roots) EXPECT_LE(std::abs(p.evaluate(z)) / std::max(1.0, std::pow(std::abs(z), 7)), 1e-9);
  }
}

TEST(Solve, TwoSimpleRoots) {
  auto r = make_ring({"x"});
  Budget b;
  auto s = solve(I(r, {"x^2 - 1"}), b);
  ASSERT_EQ(s.points.size(), 2u);
  EXPECT_TRUE(near(s.points[0].coordinates[0], -1.0));
  EXPECT_TRUE(near(s.points[1].coordinates[0], 1.0));
  EXPECT_EQ(s.points[0].multiplicity, 1);
  EXPECT_EQ(s.points[1].multiplicity, 1);
  EXPECT_EQ(s.total_multiplicity, 2);
}

TEST(Solve, DoublePointAtOrigin) {
  auto r = make_ring({"x", "y"});
  Budget b;
  auto s = solve(I(r, {"x^2", "y - x"}), b);
  ASSERT_EQ(s.points.size(), 1u);
  EXPECT_TRUE(near(s.points[0].coordinates[0], 0.0));
  EXPECT_TRUE(near(s.points[0].coordinates[1], 0.0));
  EXPECT_EQ(s.points[0].multiplicity, 2);
}

TEST(Solve, TangentConics) {
  auto r = make_ring({"x1", "x2"});
  Budget b;
  auto s = solve(I(r, {"2*x1^2 + 3*x2^2 - 1", "x1^2 + x2^2 - 1/2"}), b);
  ASSERT_EQ(s.points.size(), 2u);
  double h = 1 / std::sqrt(2.0);
  EXPECT_TRUE(near(s.points[0].coordinates[0], -h));
  EXPECT_TRUE(near(s.points[1].coordinates[0], h));
  for (const auto& p : s.points) {
    EXPECT_TRUE(near(p.coordinates[1], 0.0));
    EXPECT_EQ(p.multiplicity, 2);
  }
  EXPECT_EQ(s.total_multiplicity, 4);
}

TEST(Solve, Counts) {
  auto r = make_ring({"x"});
  Budget b;
  EXPECT_EQ(count_with_multiplicity(I(r, {"x^3 - x"}), b), 3);
  EXPECT_EQ(count_with_multiplicity(I(r, {"x^2"}), b), 2);
  EXPECT_EQ(count_distinct(I(r, {"x^2"}), b), 1);
  EXPECT_EQ(count_with_multiplicity(I(r, {"1"}), b), 0);
  EXPECT_TRUE(solve(I(r, {"x", "x - 1"}), b).points.empty());
}

TEST(Solve, PositiveDimensionRejected) {
  auto r = make_ring({"x", "y"});
  Budget b;
  try {
    solve(I(r, {"x*y"}), b);
    FAIL();
  } catch (const PositiveDimensionError& e) {
    EXPECT_EQ(e.dimension(), 1);
  }
}

TEST(Solve, MultiplicitiesSumToQuotientDimension) {
  auto r = make_ring({"a", "b", "c"});
  std::mt19937_64 rng(17);
  int solved = 0;
  for (int k = 0; k < 40 && solved < 15; ++k) {
    std::vector<Polynomial> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(symdefect::testing::random_polynomial(r, rng, 2, 4, 5));
    Ideal id(r, gens);
    Budget b;
    if (dimension(id, b) != 0) continue;
    auto s = solve(id, b);
    int sum = 0;
    for (const auto& p : s.points) sum += p.multiplicity;
    EXPECT_EQ(sum, s.total_multiplicity);
    EXPECT_EQ(sum, count_with_multiplicity(id, b));
    for (const auto& p : s.points)
      for (const auto& g : gens)
        EXPECT_LE(g.normalized_residual(p.coordinates), p.multiplicity == 1 ? 1e-8 : 1e-6);
    for (std::size_t i = 0; i < s.points.size(); ++i)
      for (std::size_t j = i + 1; j < s.points.size(); ++j)
        EXPECT_GT(detail::distance(s.points[i].coordinates, s.points[j].coordinates), 2 * s.clustering_radius);
    ++solved;
  }
  EXPECT_EQ(solved, 15);
}

TEST(Solve, CsvLayout) {
  auto r = make_ring({"x", "y"});
  Budget b;
  auto s = solve(I(r, {"x^2", "y - 1"}), b);
  std::string csv = s.to_csv(r->names());
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "x_re,x_im,y_re,y_im,multiplicity");
  EXPECT_EQ(csv.back(), '\n');
  EXPECT_NE(csv.find(",2\n"), std::string::npos);
}

TEST(Solve, Deterministic) {
  auto r = make_ring({"x", "y"});
  Budget b1, b2;
  auto id = I(r, {"x^3 - y + 1", "y^2 - x - 2"});
  EXPECT_EQ(solve(id, b1).to_csv(r->names()), solve(id, b2).to_csv(r->names()));
}

TEST(Degree, Examples) {
  auto r = make_ring({"x", "y", "z"});
  Budget b;
  EXPECT_EQ(degree_of_variety(I(r, {"x - y", "z"}), b), 1);
  EXPECT_EQ(degree_of_variety(I(r, {"x^2 + y^2 - 1", "z"}), b), 2);
  EXPECT_EQ(degree_of_variety(I(r, {"y - x^2", "z - x^3"}), b), 3);
  EXPECT_EQ(degree_of_variety(I(r, {"x*y*z - 1"}), b), 3);
  EXPECT_EQ(degree_of_variety(I(r, {"1"}), b), 0);
  EXPECT_EQ(degree_of_variety(I(r, {"x^2", "y", "z"}), b), 1);
}

TEST(Degree, UnionOfLinesAndConic) {
  auto r = make_ring({"x", "y", "z"});
  Budget b;
  // two coordinate axes plus a conic in the plane z = 1
  Ideal lines = intersect(I(r, {"y", "z"}), I(r, {"x", "z"}), b);
  Ideal all = intersect(lines, I(r, {"z - 1", "x^2 + 2*y^2 - 3"}), b);
  EXPECT_EQ(degree_of_variety(all, b), 4);
}
