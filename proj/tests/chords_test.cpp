#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "symdefect/chords.hpp"

using namespace symdefect;

namespace {

VarietySpec hypersurface(const std::string& eq) {
  auto r = make_ring({"x1", "x2", "x3"});
  return VarietySpec(r, {parse_polynomial(eq, r)}, 2);
}

MidpointProblem problem(const std::string& f, const std::string& g, std::vector<int> L = {0, 0, 1}) {
  std::vector<Rational> c(L.begin(), L.end());
  return MidpointProblem(hypersurface(f), hypersurface(g), LinearForm(c));
}

MidpointProblem pair_A() { return problem("x3 - x1^2 - x2^2", "x3 - x1^2 - 2*x2^2 + 1"); }
MidpointProblem pair_B() { return problem("x3 - x1^2 - x2^2", "x3 - 2*x1^2 - 3*x2^2 + 1"); }
MidpointProblem linear_pair() { return problem("x3", "x1", {1, 1, 1}); }

RationalPoint origin() { return {Rational(0), Rational(0), Rational(0)}; }

RationalPoint point(long a, long b, long c, long den = 1) {
  return {make_rational(a, den), make_rational(b, den), make_rational(c, den)};
}

bool close(Complex a, Complex b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

}  // namespace

TEST(FiberIdeal, ReflectsY) {
  auto P = pair_A();
  Ideal fib = fiber_ideal(P, point(1, 0, 2));
  auto r = P.ring();
  ASSERT_EQ(fib.generators().size(), 2u);
  EXPECT_EQ(fib.generators()[0], parse_polynomial("x3 - x1^2 - x2^2", r));
  // g(2p - x) with p = (1, 0, 2)
  EXPECT_EQ(fib.generators()[1], parse_polynomial("(4 - x3) - (2 - x1)^2 - 2*x2^2 + 1", r));
  EXPECT_THROW(fiber_ideal(P, {Rational(0)}), DimensionMismatch);
}

TEST(GeometricDegree, Examples) {
  Budget b;
  EXPECT_EQ(geometric_degree(pair_A(), origin(), b), 4);
  EXPECT_EQ(geometric_degree(pair_B(), origin(), b), 4);
  EXPECT_EQ(geometric_degree(linear_pair(), origin(), b), 1);
}

TEST(GeometricDegree, BoundedByBezoutAndConstantOverGenericPoints) {
  auto P = pair_A();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  std::mt19937_64 rng(11);
  std::optional<int> first;
  for (int k = 0; k < 5; ++k) {
    RationalPoint p = generic_target_point(P, loci, rng);
    int d = geometric_degree(P, p, b, 3, rng());
    EXPECT_LE(d, 2 * 2 * 1);
    if (!first) first = d;
    EXPECT_EQ(d, *first) << format_point(p);
  }
}

TEST(BranchData, HandEliminationAtOrigin) {
  Budget b;
  auto rep = branch_data(pair_A(), origin(), b);
  ASSERT_EQ(rep.status, FiberStatus::generic);
  EXPECT_EQ(rep.r, 4);
  EXPECT_EQ(rep.rho, (std::vector<int>{2, 2, 2, 2}));
  ASSERT_EQ(rep.branch_values.size(), 2u);
  std::vector<double> values;
  for (auto v : rep.branch_values) {
    EXPECT_LT(std::abs(v.imag()), 1e-9);
    values.push_back(v.real());
  }
  std::sort(values.begin(), values.end());
  EXPECT_NEAR(values[0], 1.0 / 3, 1e-9);
  EXPECT_NEAR(values[1], 1.0 / 2, 1e-9);
  // x2^2 = 1 - 2c, x1^2 = 3c - 1 on the two levels
  const double s2 = 1 / std::sqrt(2.0), s3 = 1 / std::sqrt(3.0);
  std::vector<std::vector<Complex>> expected = {{s2, 0, 0.5}, {-s2, 0, 0.5}, {0, s3, 1.0 / 3}, {0, -s3, 1.0 / 3}};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& pt : rep.branch_points.points)
      found |= close(pt.coordinates[0], e[0]) && close(pt.coordinates[1], e[1]) && close(pt.coordinates[2], e[2]);
    EXPECT_TRUE(found) << e[0] << "," << e[1] << "," << e[2];
  }
}

TEST(BranchData, LinearPairHasNoBranchPoints) {
  Budget b;
  auto rep = branch_data(linear_pair(), origin(), b);
  EXPECT_EQ(rep.status, FiberStatus::generic);
  EXPECT_EQ(rep.r, 0);
  EXPECT_TRUE(rep.rho.empty());
}

TEST(BranchData, RamificationMatchesLevelCounts) {
  // pair A: x2^2 = 1 - 2c, x1^2 = 3c - 1; pair B: x2^2 = 1 - 3c, x1^2 = 4c - 1
  struct Case {
    MidpointProblem P;
    std::vector<Rational> levels;
  };
  for (const auto& c : {Case{pair_A(), {make_rational(1, 2), make_rational(1, 3)}},
                        Case{pair_B(), {make_rational(1, 3), make_rational(1, 4)}}}) {
    Budget b;
    auto rep = branch_data(c.P, origin(), b);
    int d = geometric_degree(c.P, origin(), b);
    Ideal fiber = fiber_ideal(c.P, origin());
    Polynomial L = c.P.linear_form().on(c.P.ring());
    ASSERT_EQ(rep.branch_values.size(), c.levels.size());
    for (const Rational& level : c.levels) {
      int excess = 0;
      for (std::size_t i = 0; i < rep.rho.size(); ++i)
        if (close(c.P.linear_form().evaluate(rep.branch_points.points[i].coordinates), to_double(level), 1e-7))
          excess += rep.rho[i] - 1;
      EXPECT_EQ(excess, 2);
      EXPECT_EQ(count_distinct(fiber.with(L - Polynomial::constant(c.P.ring(), level)), b), d - excess);
      Rational nearby = level + make_rational(1, 1000000);
      EXPECT_EQ(count_distinct(fiber.with(L - Polynomial::constant(c.P.ring(), nearby)), b), d);
    }
  }
}

TEST(EulerCharacteristic, QuadricPairsAndLinearPair) {
  Budget b;
  for (auto P : {pair_A(), pair_B()}) {
    auto rep = euler_characteristic(P, origin(), b);
    EXPECT_EQ(rep.chi, 0);
    int excess = 0;
    for (int r : rep.rho) excess += r - 1;
    EXPECT_EQ(rep.d - excess, rep.chi);
  }
  auto rep = euler_characteristic(linear_pair(), origin(), b);
  EXPECT_EQ(rep.d, 1);
  EXPECT_EQ(rep.chi, 1);
}

TEST(EulerCharacteristic, RefusesCriticalValues) {
  Budget b;
  EXPECT_THROW(euler_characteristic(pair_A(), point(0, 0, -1, 2), b), OnCriticalValuesError);
}

TEST(MuInvariant, ConstantOverGenericPoints) {
  struct Case {
    MidpointProblem P;
    int mu;
  };
  for (const auto& c : {Case{pair_A(), 0}, Case{pair_B(), 0}, Case{linear_pair(), 1}}) {
    Budget b;
    ProblemLoci loci = compute_loci(c.P, b);
    MuResult mu = mu_invariant(c.P, loci, b, 10, 5);
    EXPECT_EQ(mu.mu, c.mu);
    EXPECT_EQ(mu.chis.size(), 10u);
    for (int chi : mu.chis) EXPECT_EQ(chi, c.mu);
  }
}

TEST(MuInvariant, SampledPointsAvoidLoci) {
  auto P = pair_B();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  MuResult mu = mu_invariant(P, loci, b, 5, 9);
  for (const auto& p : mu.points) EXPECT_GE(locus_residual(loci.k0, p), 1e-4);
}

TEST(LInvariance, TwentyFormsAgree) {
  auto P = pair_A();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  std::mt19937_64 rng(21);
  RationalPoint p = generic_target_point(P, loci, rng);
  auto res = l_invariance_check(P, p, loci.k0, b, 20, 3);
  EXPECT_TRUE(res.agree);
  ASSERT_EQ(res.reports.size(), 20u);
  for (const auto& r : res.reports) EXPECT_EQ(r.chi, 0);
}

TEST(Transport, StaysOnFiberAndLevel) {
  auto P = pair_A();
  Budget b;
  Ideal k0 = k0_closure(P, b);
  auto start = fiber_start_point(P, origin(), b, 4);
  auto res = transport_fiber_point(P, origin(), point(0, 0, 1, 10), start, 100, k0);
  EXPECT_LE(res.max_fiber_residual, 1e-6);
  EXPECT_LE(res.max_L_drift, 1e-6);
  EXPECT_LE(res.max_phi_error, 1e-9);
  for (std::size_t i = 0; i < 3; ++i)
    EXPECT_NEAR(std::abs(0.5 * (res.end[i] + res.end[3 + i]) - Complex(i == 2 ? 0.1 : 0.0)), 0.0, 1e-9);
}

TEST(Transport, ZeroSegmentReturnsStart) {
  auto P = pair_A();
  Budget b;
  Ideal k0 = k0_closure(P, b);
  auto start = fiber_start_point(P, origin(), b, 4);
  auto res = transport_fiber_point(P, origin(), origin(), start, 10, k0);
  for (std::size_t i = 0; i < start.size(); ++i) EXPECT_LE(std::abs(res.end[i] - start[i]), 1e-9);
}

TEST(Transport, RefusesSegmentsThroughCriticalValues) {
  auto P = pair_A();
  Budget b;
  Ideal k0 = k0_closure(P, b);
  auto start = fiber_start_point(P, origin(), b, 4);
  EXPECT_THROW(transport_fiber_point(P, origin(), point(0, 0, -1), start, 50, k0), PreconditionError);
  std::vector<Complex> off(6, Complex(0.3, 0));
  EXPECT_THROW(transport_fiber_point(P, origin(), point(0, 0, 1, 10), off, 50, k0), PreconditionError);
}

TEST(Scan, QuadricPairAMarksOnlyTheCriticalCell) {
  auto P = pair_A();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  GridSpec grid{{GridAxis{2, Rational(-1), Rational(1), 41}}, origin()};
  ScanResult res = scan(P, grid, loci);
  ASSERT_EQ(res.cells.size(), 41u);
  for (std::size_t i = 0; i < res.cells.size(); ++i) {
    if (res.cells[i].p[2] == make_rational(-1, 2)) {
      EXPECT_EQ(res.cells[i].status, FiberStatus::on_K0_closure);
    } else {
      EXPECT_EQ(res.cells[i].status, FiberStatus::generic) << res.cells[i].message;
      EXPECT_EQ(res.cells[i].chi, 0);
    }
  }
  EXPECT_EQ(res.unexplained_jumps(), 0u);
}

TEST(Scan, QuadricPairBAndLinearPairAreConstant) {
  {
    auto P = pair_B();
    Budget b;
    ProblemLoci loci = compute_loci(P, b);
    ScanResult res = scan(P, GridSpec{{GridAxis{0, Rational(-1), Rational(1), 21}}, origin()}, loci);
    for (const auto& c : res.cells) {
      EXPECT_EQ(c.status, FiberStatus::generic) << c.message;
      EXPECT_EQ(c.chi, 0);
    }
    EXPECT_TRUE(res.jumps.empty());
  }
  auto P = linear_pair();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  GridSpec grid{{GridAxis{0, Rational(-2), Rational(2), 5}, GridAxis{2, Rational(-2), Rational(2), 5}}, origin()};
  ScanResult res = scan(P, grid, loci);
  ASSERT_EQ(res.cells.size(), 25u);
  for (const auto& c : res.cells) EXPECT_EQ(c.chi, 1);
}

TEST(Scan, OutputIndependentOfWorkerCount) {
  auto P = pair_A();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  GridSpec grid{{GridAxis{2, Rational(-1), Rational(1), 9}}, origin()};
  ScanOptions one, three;
  three.workers = 3;
  EXPECT_EQ(scan(P, grid, loci, one).to_csv(), scan(P, grid, loci, three).to_csv());
  EXPECT_EQ(scan(P, grid, loci, one).to_csv().substr(0, 22), "axis1,axis2,chi,status");
}

TEST(GenericH, FiveTransformsGiveEqualMu) {
  auto A = hypersurface("x3 - x1^2 - x2^2");
  auto res = generic_h_experiment(A, A, 5, 1);
  ASSERT_EQ(res.trials.size(), 5u);
  for (const auto& t : res.trials) EXPECT_TRUE(t.mu.has_value()) << t.message;
  EXPECT_TRUE(res.all_equal());
  // a general quadric pencil: smooth elliptic quartic minus 4 points at infinity
  EXPECT_EQ(res.values().front(), -4);
}

TEST(ProperProbe, DivergentSequencesHaveUnboundedL) {
  auto P = pair_A();
  Budget b;
  ProblemLoci loci = compute_loci(P, b);
  auto seqs = properness_probe(P, loci, 20, 7, 13, b);
  ASSERT_EQ(seqs.size(), 20u);
  for (const auto& s : seqs) EXPECT_TRUE(s.diverges(1e6)) << format_point(s.p) << " " << s.min_abs_L.back();
}
