#pragma once

// Reports: an ordered list of key/value entries rendered two ways. text() is for people
// (aligned "key  value" lines, verdicts optionally colored); structured() is the
// machine-readable key=value file whose first line is `schema=symdefect-report 1`.

#include <cstdio>
#include <iomanip>

#include "symdefect/chords.hpp"

namespace symdefect {

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  void add(const std::string& key, const std::string& value) { entries_.push_back({key, value, Kind::plain}); }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }
  void add(const std::string& key, double value) { add(key, format_double(value)); }
  void add_verdict(const std::string& key, bool ok) { entries_.push_back({key, ok ? "pass" : "fail", Kind::verdict}); }
  /// Free-text line shown only in the text form.
  void note(const std::string& line) { entries_.push_back({"", line, Kind::note}); }

  const std::string& command() const { return command_; }

  std::string text(bool color = false) const {
    std::size_t width = 0;
    for (const auto& e : entries_)
      if (e.kind != Kind::note) width = std::max(width, e.key.size());
    std::ostringstream os;
    os << command_ << '\n';
    for (const auto& e : entries_) {
      if (e.kind == Kind::note) {
        os << "  " << e.value << '\n';
        continue;
      }
      os << "  " << std::left << std::setw(static_cast<int>(width)) << e.key << "  ";
      if (e.kind == Kind::verdict && color) os << (e.value == "pass" ? "\033[32m" : "\033[31m") << e.value << "\033[0m";
      else os << e.value;
      os << '\n';
    }
    return os.str();
  }

  std::string structured() const {
    std::ostringstream os;
    os << "schema=symdefect-report 1\ncommand=" << command_ << '\n';
    for (const auto& e : entries_)
      if (e.kind != Kind::note) os << e.key << '=' << e.value << '\n';
    return os.str();
  }

  static std::string format_double(double v) {
    if (v == 0) return "0";  // also folds -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
  }

 private:
  enum class Kind { plain, verdict, note };
  struct Entry {
    std::string key, value;
    Kind kind;
  };
  std::string command_;
  std::vector<Entry> entries_;
};

inline std::string join_ints(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

/// Real and imaginary parts; parts below 1e-15 of the modulus print as 0.
inline std::pair<double, double> clean_complex(Complex z) {
  double scale = std::max(1.0, std::abs(z));
  double re = std::abs(z.real()) <= 1e-15 * scale ? 0.0 : z.real();
  double im = std::abs(z.imag()) <= 1e-15 * scale ? 0.0 : z.imag();
  return {re, im};
}

inline void add_strong_ci(Report& r, const std::string& prefix, const StrongCIReport& s) {
  r.add_verdict(prefix + ".smooth", s.smooth);
  r.add(prefix + ".leading_form_dimension", s.leading_form_dimension);
  r.add_verdict(prefix + ".leading_forms", s.leading_forms_ok());
  r.note(prefix + ": leading-form dimension " + std::to_string(s.leading_form_dimension) + "; required = n = " +
         std::to_string(s.expected_dimension) + "; the literal reading = m - n = " + std::to_string(s.literal_dimension) +
         (s.literal_reading_holds() ? " also holds" : " does not hold"));
  r.add(prefix + ".literal_reading_m_minus_n", s.literal_reading_holds() ? std::string("holds") : std::string("fails"));
}

inline void add_chord_report(Report& r, const ChordFiberReport& c) {
  r.add("p", format_point(c.p));
  r.add("d", c.d);
  r.add("r", c.r);
  r.add("rho", join_ints(c.rho));
  r.add("delta.count", c.branch_values.size());
  for (std::size_t i = 0; i < c.branch_values.size(); ++i) {
    auto [re, im] = clean_complex(c.branch_values[i]);
    r.add("delta." + std::to_string(i) + ".re", re);
    r.add("delta." + std::to_string(i) + ".im", im);
  }
  r.add("chi", c.chi);
  r.add("status", std::string(to_string(c.status)));
  r.add("warnings", c.warnings.size());
  for (const auto& w : c.warnings) r.note("warning: " + w);
}

inline void add_degree_bounds(Report& r, const DegreeBoundReport& b) {
  r.add("multidegree.X", join_ints(b.a));
  r.add("multidegree.Y", join_ints(b.b));
  r.add("bound.product", b.product_bound);
  if (b.D) r.add("D", *b.D);
  if (b.d) r.add("d", *b.d);
  if (b.mu_XY) r.add("mu", *b.mu_XY);
  if (auto refined = b.refined_bound()) r.add("bound.refined", *refined);
  if (b.deg_L_infinity) r.add("deg_L_infinity", *b.deg_L_infinity);
  if (b.empty_forced()) r.note("L_infinity empty forced by the product bound");
  r.note("deg L_infinity <= " + std::to_string(b.product_bound));
  r.add_verdict("bounds_consistent", b.consistent());
}

}  // namespace symdefect
