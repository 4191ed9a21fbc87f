// symdefect: command-line front end.
//
// Exit codes: 0 success, 1 mathematical failure or disagreement, 2 input error, 3 budget exceeded.

#include <unistd.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "symdefect/problem_file.hpp"
#include "symdefect/report.hpp"

using namespace symdefect;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = Budget::kDefaultSteps;
  std::string point, grid, from, to, out;
  int trials = 5;
  int steps = 100;
  unsigned workers = 1;
  double cell_seconds = 60;
};

struct Session {
  Options opt;
  ProblemFile file;
  MidpointProblem problem;
  std::uint64_t seed = 1;
  std::string trailer;  // printed after the text report

  void load() {
    file = load_problem_file(opt.file);
    problem = file.problem();
    seed = opt.seed.value_or(file.seed.value_or(1));
  }

  void write(const std::string& name, const std::string& content) const {
    if (opt.out.empty()) return;
    fs::create_directories(opt.out);
    std::ofstream f(fs::path(opt.out) / name, std::ios::binary);
    if (!f) throw InputError("cannot write '" + (fs::path(opt.out) / name).string() + "'");
    f << content;
  }
};

RationalPoint parse_point(const std::string& text, std::size_t m, const char* flag) {
  RationalPoint p;
  for (const auto& [item, at] : detail::split_commas(text, 0)) {
    if (item.find_first_of("iIjJ") != std::string_view::npos)
      throw InputError(std::string(flag) + ": complex coordinates are not supported; give rational reals");
    try {
      p.push_back(parse_rational(item));
    } catch (const SyntaxError&) {
      throw InputError(std::string(flag) + ": bad coordinate '" + std::string(item) + "' at byte " + std::to_string(at));
    }
  }
  if (p.size() != m) throw InputError(std::string(flag) + " needs " + std::to_string(m) + " coordinates");
  return p;
}

/// "z3=-1:1:41" or "x1=0:1:5,x2=0:1:5"; axes are named by the problem's variables, z1..zm or 1..m.
GridSpec parse_grid(const std::string& text, const Session& s) {
  GridSpec g;
  std::size_t m = s.problem.m();
  g.base = s.opt.point.empty() ? RationalPoint(m, Rational(0)) : parse_point(s.opt.point, m, "--point");
  for (const auto& [item, at] : detail::split_commas(text, 0)) {
    std::string it(item);
    auto eq = it.find('=');
    if (eq == std::string::npos) throw InputError("--grid: expected axis=lo:hi:cells in '" + it + "'");
    std::string name = it.substr(0, eq);
    std::optional<std::size_t> axis;
    for (std::size_t v = 0; v < m; ++v)
      if (name == s.file.variables[v] || name == "z" + std::to_string(v + 1) || name == std::to_string(v + 1)) axis = v;
    if (!axis) throw InputError("--grid: unknown axis '" + name + "'");
    std::vector<std::string> parts;
    std::stringstream ss(it.substr(eq + 1));
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InputError("--grid: expected lo:hi:cells for axis '" + name + "'");
    GridAxis a;
    a.axis = *axis;
    try {
      a.lo = parse_rational(parts[0]);
      a.hi = parse_rational(parts[1]);
    } catch (const SyntaxError&) {
      throw InputError("--grid: bad bound for axis '" + name + "'");
    }
    char* stop = nullptr;
    long cells = std::strtol(parts[2].c_str(), &stop, 10);
    if (parts[2].empty() || *stop != '\0' || cells < 1 || cells > 100000)
      throw InputError("--grid: bad cell count for axis '" + name + "'");
    a.cells = static_cast<int>(cells);
    g.axes.push_back(a);
  }
  if (g.axes.empty() || g.axes.size() > 2) throw InputError("--grid takes one or two axes");
  return g;
}

LinearForm resolve_L(Session& s, Report& r, Budget& b) {
  if (s.file.L) {
    if (!is_admissible(s.problem, *s.file.L, b)) throw PreconditionError("the file's L vanishes on the cone at infinity");
    r.add("L", s.file.L->to_string());
    r.add("L.source", std::string("file"));
    return *s.file.L;
  }
  LinearForm L = choose_admissible_L(s.problem, s.seed, b);
  r.add("L", L.to_string());
  r.add("L.source", std::string("seeded draw"));
  return L;
}

bool run_checks(Session& s, Report& r, Budget& b) {
  auto sx = check_strong_ci(s.problem.X, b);
  auto sy = check_strong_ci(s.problem.Y, b);
  bool gp = check_general_position(s.problem, b);
  add_strong_ci(r, "X", sx);
  add_strong_ci(r, "Y", sy);
  r.add_verdict("general_position", gp);
  return sx.passed() && sy.passed() && gp;
}

int cmd_check(Session& s, Report& r) {
  Budget b(s.opt.budget);
  bool ok = run_checks(s, r, b);
  r.add_verdict("overall", ok);
  return ok ? 0 : 1;
}

int cmd_bifurcation(Session& s, Report& r) {
  Budget b(s.opt.budget);
  if (!run_checks(s, r, b)) {
    r.note("checks failed; nothing computed");
    return 1;
  }
  s.problem.L = resolve_L(s, r, b);
  r.add("seed", static_cast<std::size_t>(s.seed));
  Ideal k0 = k0_closure(s.problem, b, s.seed);
  s.write("k0.ideal", k0.to_text());
  int deg_k0 = degree_of_variety(k0, b, s.seed);
  r.add("k0.degree", deg_k0);
  for (const auto& g : k0.nonzero_generators()) r.note("k0: " + g.primitive().to_string());
  Ideal surplus = surplus_locus(s.problem, b);
  int D = degree_of_variety(surplus, b, s.seed);
  Ideal linf = l_infinity(s.problem, surplus, b);
  s.write("l_infinity.ideal", linf.to_text());
  int deg_linf = degree_of_variety(linf, b, s.seed);
  r.add("l_infinity.degree", deg_linf);
  for (const auto& g : linf.nonzero_generators()) r.note("l_infinity: " + g.primitive().to_string());
  ProblemLoci loci{k0, linf};
  MuResult mu = mu_invariant(s.problem, loci, b, 10, s.seed);
  int d = geometric_degree(s.problem, mu.points.front(), b, 3, s.seed);
  auto bounds = degree_bounds(s.problem, D, d, mu.mu, deg_linf);
  add_degree_bounds(r, bounds);
  bool empty = deg_k0 == 0 && deg_linf == 0;
  r.add("b_superset", empty ? std::string("empty") : std::string("V(k0) u V(l_infinity)"));
  if (empty) r.note("B superset empty");
  return bounds.consistent() ? 0 : 1;
}

int cmd_chords(Session& s, Report& r) {
  if (s.opt.point.empty()) throw InputError("chords needs --point");
  RationalPoint p = parse_point(s.opt.point, s.problem.m(), "--point");
  Budget b(s.opt.budget);
  s.problem.L = resolve_L(s, r, b);
  Ideal k0 = k0_closure(s.problem, b, s.seed);
  auto rep = euler_characteristic(s.problem, p, k0, b, s.seed);
  add_chord_report(r, rep);
  int excess = 0;
  for (int x : rep.rho) excess += x - 1;
  r.add_verdict("riemann_hurwitz", rep.d - excess == rep.chi);
  return 0;
}

int cmd_scan(Session& s, Report& r) {
  if (s.opt.grid.empty()) throw InputError("scan needs --grid");
  GridSpec grid = parse_grid(s.opt.grid, s);
  Budget b(s.opt.budget);
  s.problem.L = resolve_L(s, r, b);
  ProblemLoci loci = compute_loci(s.problem, b);
  ScanOptions so;
  so.seed = s.seed;
  so.budget_steps = s.opt.budget;
  so.seconds_per_cell = s.opt.cell_seconds;
  so.workers = s.opt.workers;
  ScanResult res = scan(s.problem, grid, loci, so);
  std::size_t generic = 0, on_k0 = 0, failed = 0;
  std::map<int, std::size_t> chis;
  for (const auto& c : res.cells) {
    if (c.status == FiberStatus::generic) ++generic, ++chis[*c.chi];
    else if (c.status == FiberStatus::on_K0_closure) ++on_k0;
    else ++failed;
  }
  r.add("cells", res.cells.size());
  r.add("cells.generic", generic);
  r.add("cells.on_k0", on_k0);
  r.add("cells.failed", failed);
  for (const auto& [chi, count] : chis) r.add("chi." + std::to_string(chi), count);
  r.add("jumps", res.jumps.size());
  r.add("jumps.unexplained", res.unexplained_jumps());
  for (const auto& c : res.cells)
    if (c.status == FiberStatus::failed) r.note("failed at " + format_point(c.p) + ": " + c.message);
  s.write("scan.csv", res.to_csv());
  if (s.opt.out.empty()) s.trailer = res.to_csv();
  return res.unexplained_jumps() == 0 ? 0 : 1;
}

int cmd_generic_h(Session& s, Report& r) {
  if (s.opt.trials < 1) throw InputError("--trials must be positive");
  r.add("trials", s.opt.trials);
  r.add("seed", static_cast<std::size_t>(s.seed));
  auto res = generic_h_experiment(s.problem.X, s.problem.Y, s.opt.trials, s.seed, s.opt.budget);
  for (std::size_t k = 0; k < res.trials.size(); ++k) {
    const auto& t = res.trials[k];
    std::string key = "trial." + std::to_string(k + 1);
    r.add(key + ".H", format_matrix(t.H));
    if (t.mu) r.add(key + ".mu", *t.mu);
    else r.add(key + ".skipped", t.message);
  }
  r.add("mu", res.values().front());
  r.add_verdict("mu_equal", res.all_equal());
  r.note("the homeomorphism statement is tested through its numeric consequence: equal mu across H");
  return 0;
}

int cmd_transport(Session& s, Report& r) {
  if (s.opt.from.empty() || s.opt.to.empty()) throw InputError("transport needs --from and --to");
  if (s.opt.steps < 1) throw InputError("--steps must be positive");
  RationalPoint p0 = parse_point(s.opt.from, s.problem.m(), "--from");
  RationalPoint p1 = parse_point(s.opt.to, s.problem.m(), "--to");
  Budget b(s.opt.budget);
  s.problem.L = resolve_L(s, r, b);
  Ideal k0 = k0_closure(s.problem, b, s.seed);
  auto start = fiber_start_point(s.problem, p0, b, s.seed);
  auto res = transport_fiber_point(s.problem, p0, p1, start, s.opt.steps, k0);
  r.add("from", format_point(p0));
  r.add("to", format_point(p1));
  r.add("steps", s.opt.steps);
  for (std::size_t i = 0; i < res.end.size(); ++i) {
    auto [re, im] = clean_complex(res.end[i]);
    r.add("end." + std::to_string(i) + ".re", re);
    r.add("end." + std::to_string(i) + ".im", im);
  }
  double moved = 0;
  for (std::size_t i = 0; i < start.size(); ++i) moved = std::max(moved, std::abs(res.end[i] - start[i]));
  r.add("max_fiber_residual", res.max_fiber_residual);
  r.add("max_L_drift", res.max_L_drift);
  r.add("max_phi_error", res.max_phi_error);
  r.add("distance_from_start", moved);
  bool ok = res.max_fiber_residual <= 1e-6 && res.max_L_drift <= 1e-6 && res.max_phi_error <= 1e-6;
  if (p0 == p1) ok = ok && moved <= 1e-9;
  r.add_verdict("tolerances", ok);
  return ok ? 0 : 1;
}

bool use_color() { return std::getenv("NO_COLOR") == nullptr && isatty(STDOUT_FILENO); }

int run(const std::string& command, Session& s, int (*body)(Session&, Report&)) {
  Report r(command);
  int code = 0;
  try {
    s.load();
    code = body(s, r);
  } catch (const BudgetExceeded& e) {
    r.add("error", std::string(e.what()));
    code = 3;
  } catch (const SyntaxError& e) {
    r.add("error", std::string(e.what()));
    code = 2;
  } catch (const UnknownVariableError& e) {
    r.add("error", std::string(e.what()));
    code = 2;
  } catch (const DimensionMismatch& e) {
    r.add("error", std::string(e.what()));
    code = 2;
  } catch (const InputError& e) {
    r.add("error", std::string(e.what()));
    code = 2;
  } catch (const ZeroPolynomialError& e) {
    r.add("error", std::string(e.what()));
    code = 2;
  } catch (const Error& e) {
    r.add("error", std::string(e.what()));
    code = 1;
  }
  r.add("exit", code);
  std::cout << r.text(use_color()) << s.trailer;
  try {
    s.write(command + ".report", r.structured());
  } catch (const std::exception& e) {
    std::cerr << "symdefect: " << e.what() << '\n';
    return 2;
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry defect of the midpoint map for pairs of strong complete intersections"};
  app.require_subcommand(1);
  Session s;
  Options& o = s.opt;

  auto common = [&](CLI::App* c) {
    c->add_option("file", o.file, "problem file")->required();
    c->add_option("--seed", o.seed, "random seed (default: the file's seed, else 1)");
    c->add_option("--budget", o.budget, "Buchberger step budget")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "directory for the structured report and artifacts");
  };
  auto* check = app.add_subcommand("check", "strong complete intersection and general position checks");
  common(check);
  auto* bif = app.add_subcommand("bifurcation", "critical-value and asymptotic hypersurfaces, degree bounds");
  common(bif);
  auto* chords = app.add_subcommand("chords", "Euler characteristic of the chord fiber over a point");
  common(chords);
  chords->add_option("--point", o.point, "target point, comma-separated rationals");
  auto* sc = app.add_subcommand("scan", "Euler characteristic over a real grid of target points");
  common(sc);
  sc->add_option("--grid", o.grid, "axis=lo:hi:cells[,axis=lo:hi:cells]");
  sc->add_option("--point", o.point, "base point for coordinates off the grid axes (default 0)");
  sc->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1u, 256u));
  sc->add_option("--cell-seconds", o.cell_seconds, "time limit per cell")->check(CLI::PositiveNumber);
  auto* gh = app.add_subcommand("generic-h", "mu of (X, H(Y)) for random invertible linear maps H");
  common(gh);
  gh->add_option("--trials", o.trials, "number of maps H");
  auto* tr = app.add_subcommand("transport", "carry a fiber point along a segment of target points");
  common(tr);
  tr->add_option("--from", o.from, "start point");
  tr->add_option("--to", o.to, "end point");
  tr->add_option("--steps", o.steps, "RK4 steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (check->parsed()) return run("check", s, cmd_check);
  if (bif->parsed()) return run("bifurcation", s, cmd_bifurcation);
  if (chords->parsed()) return run("chords", s, cmd_chords);
  if (sc->parsed()) return run("scan", s, cmd_scan);
  if (gh->parsed()) return run("generic-h", s, cmd_generic_h);
  return run("transport", s, cmd_transport);
}
