#pragma once

// Chord fibers Phi^-1(p) of the midpoint map, identified with curves in the x space through
// y = 2p - x. The Euler characteristic of a fiber curve comes from a Riemann-Hurwitz count
// for a linear form L restricted to it: chi = d - sum (rho_i - 1), where d is the number of
// points of a generic level set of L and rho_i are the ramification indices at the critical
// points of L. The local multiplicity of a critical point in the zero-dimensional system
// {fiber, det Jacobian(fiber, L)} is rho_i - 1 (the Milnor number of L on the smooth curve).

#include <Eigen/Dense>
#include <algorithm>
#include <future>
#include <map>
#include <thread>

#include "symdefect/varieties.hpp"

namespace symdefect {

enum class FiberStatus { generic, on_K0_closure, failed };

inline const char* to_string(FiberStatus s) {
  switch (s) {
    case FiberStatus::generic: return "generic";
    case FiberStatus::on_K0_closure: return "on_K0_closure";
    case FiberStatus::failed: return "failed";
  }
  return "failed";
}

using RationalPoint = std::vector<Rational>;

struct ChordFiberReport {
  RationalPoint p;
  LinearForm L;
  int d = 0;
  SolutionSet branch_points;
  std::vector<Complex> branch_values;  // distinct critical values of L on the fiber
  int r = 0;
  std::vector<int> rho;
  int chi = 0;
  FiberStatus status = FiberStatus::failed;
  std::vector<std::string> warnings;
};

/// Target-space loci a generic point has to avoid.
struct ProblemLoci {
  Ideal k0;
  Ideal l_infinity;
};

inline ProblemLoci compute_loci(const MidpointProblem& problem, Budget& budget) {
  return {k0_closure(problem, budget), l_infinity(problem, budget)};
}

/// Max normalized residual of the generators at p; +infinity for the unit ideal.
inline double locus_residual(const Ideal& ideal, const RationalPoint& p) {
  auto gens = ideal.nonzero_generators();
  bool exact_zero = true;
  double worst = 0;
  std::vector<Complex> z;
  for (const auto& x : p) z.emplace_back(to_double(x), 0.0);
  for (const auto& g : gens) {
    if (g.is_constant()) return std::numeric_limits<double>::infinity();
    if (sgn(g.evaluate(std::span<const Rational>(p))) != 0) exact_zero = false;
    worst = std::max(worst, g.normalized_residual(z));
  }
  return exact_zero ? 0.0 : worst;
}

inline std::string format_point(const RationalPoint& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p[i]);
  return s;
}

/// (f(x), g(2p - x)) over the problem's variables.
inline Ideal fiber_ideal(const MidpointProblem& problem, const RationalPoint& p) {
  if (p.size() != problem.m()) throw DimensionMismatch("target point has the wrong number of coordinates");
  const RingPtr& ring = problem.ring();
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < problem.m(); ++i)
    images.push_back(Polynomial::constant(ring, 2 * p[i]) - Polynomial::variable(ring, i));
  std::vector<Polynomial> gens = problem.X.equations;
  for (const auto& g : problem.Y.equations) gens.push_back(g.embed(ring, identity_map(ring->size())).substitute(images));
  return Ideal(ring, std::move(gens));
}

/// Points of the fiber over p on the level set L = c.
inline SolutionSet fiber_level_points(const MidpointProblem& problem, const RationalPoint& p, const Rational& c,
                                      Budget& budget, std::uint64_t seed = 1) {
  Ideal level = fiber_ideal(problem, p).with(problem.linear_form().on(problem.ring()) - Polynomial::constant(problem.ring(), c));
  SolveOptions opts;
  opts.seed = seed;
  return solve(level, budget, opts);
}

/// Number of points on generic level sets of L restricted to the fiber (majority over trials).
inline int geometric_degree(const MidpointProblem& problem, const RationalPoint& p, Budget& budget, int trials = 3,
                            std::uint64_t seed = 1) {
  Ideal fiber = fiber_ideal(problem, p);
  Polynomial L = problem.linear_form().on(problem.ring());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-997, 997), den(1, 97);
  std::map<int, int> votes;
  for (int k = 0; k < trials; ++k) {
    Rational c = make_rational(num(rng), den(rng));
    Ideal level = fiber.with(L - Polynomial::constant(problem.ring(), c));
    votes[count_with_multiplicity(level, budget)]++;
  }
  for (const auto& [value, count] : votes)
    if (2 * count > trials) return value;
  throw DisagreementError("level-set counts disagree across slices; the point is likely atypical");
}

/// Critical points of L on the fiber curve with their ramification indices.
inline ChordFiberReport branch_data(const MidpointProblem& problem, const RationalPoint& p, Budget& budget,
                                    std::uint64_t seed = 1) {
  ChordFiberReport rep;
  rep.p = p;
  rep.L = problem.linear_form();
  Ideal fiber = fiber_ideal(problem, p);
  auto system = fiber.nonzero_generators();
  system.push_back(rep.L.on(problem.ring()));
  Ideal critical = fiber.with(determinant(jacobian(system)));
  SolveOptions opts;
  opts.seed = seed;
  try {
    rep.branch_points = solve(critical, budget, opts);
  } catch (const PositiveDimensionError&) {
    rep.status = FiberStatus::on_K0_closure;
    return rep;
  }
  for (const auto& pt : rep.branch_points.points) {
    rep.rho.push_back(pt.multiplicity + 1);
    Complex value = rep.L.evaluate(pt.coordinates);
    bool seen = false;
    for (auto v : rep.branch_values) seen |= std::abs(v - value) <= 1e-7 * std::max(1.0, std::abs(v));
    if (!seen) rep.branch_values.push_back(value);
  }
  rep.r = static_cast<int>(rep.rho.size());
  for (const auto& w : rep.branch_points.warnings) rep.warnings.push_back(w);
  rep.status = FiberStatus::generic;
  return rep;
}

/// Full report with chi = d - sum (rho_i - 1). Refuses p on the closure of the critical values.
inline ChordFiberReport euler_characteristic(const MidpointProblem& problem, const RationalPoint& p, const Ideal& k0,
                                             Budget& budget, std::uint64_t seed = 1) {
  double res = locus_residual(k0, p);
  if (res <= 1e-8) throw OnCriticalValuesError("point " + format_point(p) + " lies on the closure of the critical values", res);
  ChordFiberReport rep = branch_data(problem, p, budget, seed);
  if (rep.status != FiberStatus::generic)
    throw OnCriticalValuesError("branch locus is positive-dimensional at " + format_point(p), res);
  rep.d = geometric_degree(problem, p, budget, 3, seed);
  int excess = 0;
  for (int r : rep.rho) excess += r - 1;
  if (excess != rep.branch_points.total_multiplicity)
    rep.warnings.push_back("branch multiplicities do not sum to the critical-system length");
  rep.chi = rep.d - excess;
  if (problem.n() >= 3) rep.warnings.push_back("n >= 3: fiber systems grow quickly; results are subject to the budget");
  return rep;
}

inline ChordFiberReport euler_characteristic(const MidpointProblem& problem, const RationalPoint& p, Budget& budget,
                                             std::uint64_t seed = 1) {
  return euler_characteristic(problem, p, k0_closure(problem, budget), budget, seed);
}

/// Random rational point with 8-bit numerators and denominators.
inline RationalPoint random_target_point(std::size_t m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-255, 255), den(1, 255);
  RationalPoint p(m);
  for (auto& x : p) x = make_rational(num(rng), den(rng));
  return p;
}

/// Random point at normalized residual >= 1e-4 from both loci.
inline RationalPoint generic_target_point(const MidpointProblem& problem, const ProblemLoci& loci,
                                          std::mt19937_64& rng) {
  for (int k = 0; k < 1000; ++k) {
    RationalPoint p = random_target_point(problem.m(), rng);
    if (locus_residual(loci.k0, p) >= 1e-4 && locus_residual(loci.l_infinity, p) >= 1e-4) return p;
  }
  throw RetriesExhausted("no generic target point found");
}

struct MuResult {
  int mu = 0;
  std::vector<RationalPoint> points;
  std::vector<int> chis;
};

/// The common Euler characteristic of generic chord fibers.
inline MuResult mu_invariant(const MidpointProblem& problem, const ProblemLoci& loci, Budget& budget, int samples = 10,
                             std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  MuResult out;
  for (int k = 0; k < samples; ++k) {
    RationalPoint p = generic_target_point(problem, loci, rng);
    out.points.push_back(p);
    out.chis.push_back(euler_characteristic(problem, p, loci.k0, budget, rng()).chi);
  }
  std::map<int, int> votes;
  for (int c : out.chis) votes[c]++;
  if (votes.size() > 1) {
    std::string msg = "Euler characteristics disagree:";
    for (std::size_t i = 0; i < out.chis.size(); ++i)
      msg += " [" + format_point(out.points[i]) + "] -> " + std::to_string(out.chis[i]) + ";";
    throw DisagreementError(msg);
  }
  out.mu = out.chis.empty() ? 0 : out.chis.front();
  return out;
}

struct LInvarianceResult {
  bool agree = true;
  std::vector<LinearForm> forms;
  std::vector<ChordFiberReport> reports;
  int rejected_draws = 0;
};

/// chi at p under several independently drawn admissible forms.
inline LInvarianceResult l_invariance_check(const MidpointProblem& problem, const RationalPoint& p, const Ideal& k0,
                                            Budget& budget, int trials = 2, std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  LInvarianceResult out;
  while (static_cast<int>(out.forms.size()) < trials) {
    LinearForm L = random_linear_form(problem.m(), rng, 10);
    if (!is_admissible(problem, L, budget)) {
      if (++out.rejected_draws > 20 * trials) throw RetriesExhausted("too many inadmissible linear forms");
      continue;
    }
    MidpointProblem q = problem;
    q.L = L;
    out.forms.push_back(L);
    out.reports.push_back(euler_characteristic(q, p, k0, budget, rng()));
  }
  for (const auto& r : out.reports) out.agree &= r.chi == out.reports.front().chi;
  return out;
}

struct TransportResult {
  std::vector<Complex> end;  // (x, y)
  double max_fiber_residual = 0;
  double max_L_drift = 0;
  double max_phi_error = 0;
};

namespace detail {

struct FiberNumerics {
  std::size_t m;
  std::vector<Polynomial> eqs;                // f(x), g(y) on the pair ring
  std::vector<std::vector<Polynomial>> grad;  // d eqs / d (x, y)
  std::vector<Complex> L;

  FiberNumerics(const MidpointProblem& problem) : m(problem.m()) {
    RingPtr pair = problem.pair_ring();
    eqs = problem.f_on_pair(pair);
    for (auto& g : problem.g_on_pair(pair)) eqs.push_back(std::move(g));
    for (const auto& e : eqs) {
      std::vector<Polynomial> row;
      for (std::size_t v = 0; v < 2 * m; ++v) row.push_back(e.derivative(v));
      grad.push_back(std::move(row));
    }
    for (const auto& c : problem.linear_form().coefficients) L.emplace_back(to_double(c), 0.0);
  }

  Complex L_of(const Eigen::VectorXcd& z) const {
    Complex s = 0;
    for (std::size_t i = 0; i < m; ++i) s += L[i] * z(static_cast<long>(i));
    return s;
  }

  // rows: d eqs, dL on x, (I/2, I/2)
  Eigen::MatrixXcd matrix(const Eigen::VectorXcd& z) const {
    std::vector<Complex> pt(z.data(), z.data() + z.size());
    long n = static_cast<long>(2 * m);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    long row = 0;
    for (const auto& g : grad) {
      for (long v = 0; v < n; ++v) a(row, v) = g[static_cast<std::size_t>(v)].evaluate(pt);
      ++row;
    }
    for (std::size_t i = 0; i < m; ++i) a(row, static_cast<long>(i)) = L[i];
    ++row;
    for (std::size_t i = 0; i < m; ++i, ++row) {
      a(row, static_cast<long>(i)) = 0.5;
      a(row, static_cast<long>(m + i)) = 0.5;
    }
    return a;
  }

  Eigen::VectorXcd solve(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& rhs) const {
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    if (!(lu.rcond() > 1e-13)) throw NumericalError("singular transport system: the path meets Sing(Phi, L)");
    return lu.solve(rhs);
  }

  double fiber_residual(const Eigen::VectorXcd& z) const {
    std::vector<Complex> pt(z.data(), z.data() + z.size());
    double r = 0;
    for (const auto& e : eqs) r = std::max(r, e.normalized_residual(pt));
    return r;
  }
};

}  // namespace detail

/// Lifts the segment p0 -> p1 to the fiber family along the vector field that keeps L constant.
inline TransportResult transport_fiber_point(const MidpointProblem& problem, const RationalPoint& p0,
                                             const RationalPoint& p1, const std::vector<Complex>& start, int steps,
                                             const Ideal& k0) {
  const std::size_t m = problem.m();
  if (start.size() != 2 * m) throw DimensionMismatch("start point must list x and y coordinates");
  if (steps < 1) throw PreconditionError("at least one step is required");
  detail::FiberNumerics num(problem);
  Eigen::VectorXcd z(static_cast<long>(2 * m));
  for (std::size_t i = 0; i < 2 * m; ++i) z(static_cast<long>(i)) = start[i];
  if (num.fiber_residual(z) > 1e-8) throw PreconditionError("start point is not on X x Y");
  for (std::size_t i = 0; i < m; ++i)
    if (std::abs(0.5 * (start[i] + start[m + i]) - to_double(p0[i])) > 1e-8)
      throw PreconditionError("start point is not over p0");

  // segment p0 + t (p1 - p0), t in [0, 1], must stay off V(k0)
  RingPtr tr = make_ring({"t"});
  std::vector<Polynomial> seg;
  for (std::size_t i = 0; i < m; ++i)
    seg.push_back(Polynomial::constant(tr, p0[i]) + Polynomial::variable(tr, 0) * (p1[i] - p0[i]));
  bool moves = false;
  for (std::size_t i = 0; i < m; ++i) moves |= p0[i] != p1[i];
  if (moves) {
    UPoly common;
    bool empty = false;
    for (const auto& g : k0.nonzero_generators()) {
      if (g.is_constant()) empty = true;
      else common = UPoly::gcd(common, UPoly::from_polynomial(g.substitute(seg), 0));
    }
    if (!empty) {
      if (common.is_zero()) throw PreconditionError("segment lies inside the closure of the critical values");
      for (Complex t : aberth_roots(common))
        if (std::abs(t.imag()) <= 1e-4 && t.real() >= -1e-4 && t.real() <= 1 + 1e-4)
          throw PreconditionError("segment crosses the closure of the critical values");
    }
  }

  Eigen::VectorXcd dp = Eigen::VectorXcd::Zero(static_cast<long>(2 * m));
  std::vector<Complex> p0c, dpc;
  for (std::size_t i = 0; i < m; ++i) {
    p0c.emplace_back(to_double(p0[i]), 0.0);
    dpc.emplace_back(to_double(p1[i] - p0[i]), 0.0);
  }
  const long nrow_fixed = static_cast<long>(num.eqs.size()) + 1;
  for (std::size_t i = 0; i < m; ++i) dp(nrow_fixed + static_cast<long>(i)) = dpc[i];
  auto field = [&](const Eigen::VectorXcd& w) { return num.solve(num.matrix(w), dp); };

  const Complex L0 = num.L_of(z);
  TransportResult out;
  const double h = 1.0 / steps;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXcd k1 = field(z);
    Eigen::VectorXcd k2 = field(z + 0.5 * h * k1);
    Eigen::VectorXcd k3 = field(z + 0.5 * h * k2);
    Eigen::VectorXcd k4 = field(z + h * k3);
    z += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    double t = static_cast<double>(s + 1) * h;
    // Newton projection onto {f = 0, g = 0, L = L0, Phi = p0 + t (p1 - p0)}
    for (int it = 0; it < 4; ++it) {
      std::vector<Complex> pt(z.data(), z.data() + z.size());
      Eigen::VectorXcd F(static_cast<long>(2 * m));
      long row = 0;
      for (const auto& e : num.eqs) F(row++) = e.evaluate(pt);
      F(row++) = num.L_of(z) - L0;
      for (std::size_t i = 0; i < m; ++i) F(row++) = 0.5 * (pt[i] + pt[m + i]) - (p0c[i] + t * dpc[i]);
      if (F.norm() <= 1e-14 * std::max(1.0, z.norm())) break;
      z -= num.solve(num.matrix(z), F);
    }
    double res = num.fiber_residual(z);
    if (!(res <= 1e-4)) throw NumericalError("residual blow-up during transport");
    out.max_fiber_residual = std::max(out.max_fiber_residual, res);
    out.max_L_drift = std::max(out.max_L_drift, std::abs(num.L_of(z) - L0));
    for (std::size_t i = 0; i < m; ++i)
      out.max_phi_error = std::max(
          out.max_phi_error, std::abs(0.5 * (z(static_cast<long>(i)) + z(static_cast<long>(m + i))) - (p0c[i] + t * dpc[i])));
  }
  out.end.assign(z.data(), z.data() + z.size());
  return out;
}

/// A point of X x Y over p: a solution of the fiber on a generic level of L, with y = 2p - x.
inline std::vector<Complex> fiber_start_point(const MidpointProblem& problem, const RationalPoint& p, Budget& budget,
                                              std::uint64_t seed = 1) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-97, 97), den(1, 17);
  for (int k = 0; k < 10; ++k) {
    auto sols = fiber_level_points(problem, p, make_rational(num(rng), den(rng)), budget, seed);
    for (const auto& s : sols.points) {
      if (s.multiplicity != 1) continue;
      std::vector<Complex> z = s.coordinates;
      for (std::size_t i = 0; i < problem.m(); ++i) z.push_back(2.0 * to_double(p[i]) - s.coordinates[i]);
      return z;
    }
  }
  throw RetriesExhausted("no simple fiber point found");
}

struct GridAxis {
  std::size_t axis = 0;  // target coordinate index
  Rational lo, hi;
  int cells = 1;

  Rational node(int i) const {
    if (cells == 1) return lo;
    return lo + (hi - lo) * Rational(i) / Rational(cells - 1);
  }
};

struct GridSpec {
  std::vector<GridAxis> axes;  // one or two
  RationalPoint base;          // coordinates not on an axis
};

struct ScanCell {
  RationalPoint p;
  std::optional<int> chi;
  FiberStatus status = FiberStatus::failed;
  std::string message;
};

struct ScanJump {
  std::size_t a = 0, b = 0;  // neighboring cell indices
  bool explained = false;    // a point of V(l_infinity) lies within grid resolution
};

struct ScanResult {
  GridSpec grid;
  std::vector<ScanCell> cells;  // row-major: axis 1 fastest
  std::vector<ScanJump> jumps;

  std::string to_csv() const {
    std::ostringstream os;
    os << "axis1,axis2,chi,status\n";
    for (const auto& c : cells) {
      os << to_double(c.p[grid.axes[0].axis]) << ',';
      if (grid.axes.size() > 1) os << to_double(c.p[grid.axes[1].axis]);
      os << ',';
      if (c.chi) os << *c.chi;
      os << ',' << to_string(c.status) << '\n';
    }
    return os.str();
  }

  std::size_t unexplained_jumps() const {
    std::size_t n = 0;
    for (const auto& j : jumps) n += !j.explained;
    return n;
  }
};

namespace detail {

/// Whether V(ideal) meets the segment a -> b extended by its own length on both sides.
inline bool locus_near_segment(const Ideal& ideal, const RationalPoint& a, const RationalPoint& b) {
  RingPtr tr = make_ring({"t"});
  std::vector<Polynomial> seg;
  for (std::size_t i = 0; i < a.size(); ++i)
    seg.push_back(Polynomial::constant(tr, a[i]) + Polynomial::variable(tr, 0) * (b[i] - a[i]));
  UPoly common;
  for (const auto& g : ideal.nonzero_generators()) {
    if (g.is_constant()) return false;
    common = UPoly::gcd(common, UPoly::from_polynomial(g.substitute(seg), 0));
  }
  if (common.is_zero()) return true;
  for (Complex t : aberth_roots(common))
    if (std::abs(t.imag()) <= 1.0 && t.real() >= -1.0 && t.real() <= 2.0) return true;
  return false;
}

}  // namespace detail

struct ScanOptions {
  std::uint64_t seed = 1;
  std::size_t budget_steps = 200000;
  double seconds_per_cell = 60;
  unsigned workers = 1;
};

/// chi over a 1D or 2D real grid of target points. Cells are independent; results are
/// aggregated by grid index, so the output does not depend on the worker count.
inline ScanResult scan(const MidpointProblem& problem, const GridSpec& grid, const ProblemLoci& loci,
                       const ScanOptions& options = {}) {
  if (grid.axes.empty() || grid.axes.size() > 2) throw PreconditionError("grids have one or two axes");
  if (grid.base.size() != problem.m()) throw DimensionMismatch("grid base point has the wrong length");
  ScanResult out;
  out.grid = grid;
  int n1 = grid.axes[0].cells, n2 = grid.axes.size() > 1 ? grid.axes[1].cells : 1;
  for (int j = 0; j < n2; ++j) {
    for (int i = 0; i < n1; ++i) {
      ScanCell c;
      c.p = grid.base;
      c.p[grid.axes[0].axis] = grid.axes[0].node(i);
      if (grid.axes.size() > 1) c.p[grid.axes[1].axis] = grid.axes[1].node(j);
      out.cells.push_back(std::move(c));
    }
  }
  auto work = [&](std::size_t index) {
    ScanCell& c = out.cells[index];
    Budget budget(options.budget_steps,
                  std::chrono::milliseconds(static_cast<long>(options.seconds_per_cell * 1000)));
    try {
      auto rep = euler_characteristic(problem, c.p, loci.k0, budget, options.seed + index);
      c.chi = rep.chi;
      c.status = FiberStatus::generic;
    } catch (const OnCriticalValuesError& e) {
      c.status = FiberStatus::on_K0_closure;
      c.message = e.what();
    } catch (const Error& e) {
      c.status = FiberStatus::failed;
      c.message = e.what();
    }
  };
  unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    for (std::size_t k = 0; k < out.cells.size(); ++k) work(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t k = w; k < out.cells.size(); k += workers) work(k);
      });
    for (auto& t : pool) t.join();
  }
  auto check = [&](std::size_t a, std::size_t b) {
    const auto& ca = out.cells[a];
    const auto& cb = out.cells[b];
    if (ca.status != FiberStatus::generic || cb.status != FiberStatus::generic || *ca.chi == *cb.chi) return;
    out.jumps.push_back({a, b, detail::locus_near_segment(loci.l_infinity, ca.p, cb.p)});
  };
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      std::size_t k = static_cast<std::size_t>(j * n1 + i);
      if (i + 1 < n1) check(k, k + 1);
      if (j + 1 < n2) check(k, k + static_cast<std::size_t>(n1));
    }
  return out;
}

struct HTrial {
  RationalMatrix H;
  bool general_position = false;
  std::optional<int> mu;
  std::string message;
  bool budget_exceeded = false;
};

inline std::string format_matrix(const RationalMatrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += i ? ";" : "";
    for (std::size_t j = 0; j < a[i].size(); ++j) s += (j ? "," : "") + to_string(a[i][j]);
  }
  return s + "]";
}

struct HExperimentResult {
  std::vector<HTrial> trials;

  std::vector<int> values() const {
    std::vector<int> v;
    for (const auto& t : trials)
      if (t.mu) v.push_back(*t.mu);
    return v;
  }
  bool all_equal() const {
    auto v = values();
    return std::all_of(v.begin(), v.end(), [&](int x) { return x == v.front(); });
  }
};

/// mu of (X, H(Y)) for seeded random invertible H. Trials that fail are recorded; unequal mu
/// values raise DisagreementError listing every H with its value.
inline HExperimentResult generic_h_experiment(const VarietySpec& X, const VarietySpec& Y, int trials,
                                              std::uint64_t seed, std::size_t budget_steps = 200000,
                                              int samples = 10) {
  HExperimentResult out;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < trials; ++k) {
    HTrial trial;
    trial.H = random_linear_map_H(X.ambient_dimension(), rng());
    std::uint64_t trial_seed = rng();
    try {
      MidpointProblem problem(X, apply_H(Y, trial.H), std::nullopt, trial_seed);
      Budget budget(budget_steps);
      trial.general_position = check_general_position(problem, budget);
      if (!trial.general_position) {
        trial.message = "not in general position; skipped";
      } else {
        problem.L = choose_admissible_L(problem, trial_seed, budget);
        ProblemLoci loci = compute_loci(problem, budget);
        trial.mu = mu_invariant(problem, loci, budget, samples, trial_seed).mu;
      }
    } catch (const BudgetExceeded& e) {
      trial.message = e.what();
      trial.budget_exceeded = true;
    } catch (const Error& e) {
      trial.message = e.what();
    }
    out.trials.push_back(std::move(trial));
  }
  if (out.values().empty()) {
    bool budget = std::any_of(out.trials.begin(), out.trials.end(), [](const HTrial& t) { return t.budget_exceeded; });
    if (budget) throw BudgetExceeded("no trial finished within the budget", budget_steps, 0, 0);
    throw RetriesExhausted("every trial failed or was skipped");
  }
  if (!out.all_equal()) {
    std::string msg = "mu differs across H:";
    for (const auto& t : out.trials)
      if (t.mu) msg += " " + format_matrix(t.H) + " -> " + std::to_string(*t.mu) + ";";
    throw DisagreementError(msg);
  }
  return out;
}

struct ProperSequence {
  RationalPoint p;
  LinearForm M;
  std::vector<double> min_abs_L;  // per escape level

  bool diverges(double bound) const {
    for (std::size_t i = 1; i < min_abs_L.size(); ++i)
      if (!(min_abs_L[i] > min_abs_L[i - 1])) return false;
    return !min_abs_L.empty() && min_abs_L.back() > bound;
  }
};

/// Divergent sequences on X x Y with Phi fixed: points of the fiber over a generic p on the
/// levels M = 10^k (1 + |p|) |M|_1 of a random linear form M. Properness of (Phi, L) forces |L| -> oo.
inline std::vector<ProperSequence> properness_probe(const MidpointProblem& problem, const ProblemLoci& loci,
                                                    int sequences, int levels, std::uint64_t seed,
                                                    Budget& budget) {
  std::mt19937_64 rng(seed);
  std::vector<ProperSequence> out;
  for (int s = 0; s < sequences; ++s) {
    ProperSequence seq;
    seq.p = generic_target_point(problem, loci, rng);
    seq.M = random_linear_form(problem.m(), rng, 10);
    Polynomial M = seq.M.on(problem.ring());
    Ideal fiber = fiber_ideal(problem, seq.p);
    // escape levels start beyond the scale of p so that the sequence is already leaving every bounded set
    Rational reach = 0, weight = 0;
    for (const auto& x : seq.p) reach = std::max<Rational>(reach, abs(x));
    for (const auto& c : seq.M.coefficients) weight += abs(c);
    Rational scale = (1 + reach) * weight;
    for (int k = 1; k <= levels; ++k) {
      Integer power;
      mpz_ui_pow_ui(power.get_mpz_t(), 10, static_cast<unsigned long>(k));
      Rational big = Rational(power) * scale;
      SolveOptions opts;
      opts.seed = rng();
      auto sols = solve(fiber.with(M - Polynomial::constant(problem.ring(), big)), budget, opts);
      double least = std::numeric_limits<double>::infinity();
      for (const auto& pt : sols.points) least = std::min(least, std::abs(problem.linear_form().evaluate(pt.coordinates)));
      seq.min_abs_L.push_back(least);
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace symdefect
