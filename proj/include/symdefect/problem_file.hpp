#pragma once

// Plain-text problem files:
//
//   # quadric pair A
//   n: 2
//   vars: x1, x2, x3
//   X: x3 - x1^2 - x2^2
//   Y:
//     x3 - x1^2 - 2*x2^2 + 1
//   L: 0, 0, 1
//   seed: 7
//
// `#` starts a comment. X and Y take one polynomial per line, on the label line or below it.
// L and seed are optional.

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "symdefect/varieties.hpp"

namespace symdefect {

struct ProblemFile {
  int n = 0;
  std::vector<std::string> variables;
  RingPtr ring;
  std::vector<Polynomial> X, Y;
  std::optional<LinearForm> L;
  std::optional<std::uint64_t> seed;

  MidpointProblem problem() const {
    return MidpointProblem(VarietySpec(ring, X, n), VarietySpec(ring, Y, n), L, seed.value_or(1));
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::pair<std::string_view, std::size_t>> split_commas(std::string_view s, std::size_t base) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t end = s.find(',', start);
    std::string_view item = s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
    std::size_t lead = item.find_first_not_of(" \t\r");
    out.emplace_back(trim(item), base + start + (lead == std::string_view::npos ? 0 : lead));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace detail

/// Parses a problem file. Errors carry the byte offset in `text`.
inline ProblemFile parse_problem_file(std::string_view text) {
  std::string section;
  std::optional<std::pair<std::string_view, std::size_t>> n_text, vars_text, L_text, seed_text;
  std::vector<std::pair<std::string_view, std::size_t>> x_lines, y_lines;
  std::size_t pos = 0;
  for (std::size_t number = 1; pos <= text.size(); ++number) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    line = line.substr(0, line.find('#'));
    std::size_t lead = line.find_first_not_of(" \t\r");
    if (lead != std::string_view::npos) {
      std::string_view body = detail::trim(line);
      std::size_t at = pos + lead;
      std::size_t colon = body.find(':');
      std::string key = colon == std::string_view::npos ? "" : std::string(detail::trim(body.substr(0, colon)));
      bool labeled = key == "n" || key == "vars" || key == "X" || key == "Y" || key == "L" || key == "seed";
      if (labeled) {
        if ((key == "n" && n_text) || (key == "vars" && vars_text) ||
            (key == "X" && !x_lines.empty()) || (key == "Y" && !y_lines.empty()) || (key == "L" && L_text) ||
            (key == "seed" && seed_text))
          throw SyntaxError("duplicate section '" + key + "' on line " + std::to_string(number), at);
        section = key;
        std::string_view rest = body.substr(colon + 1);
        std::size_t rest_lead = rest.find_first_not_of(" \t\r");
        std::size_t rest_at = at + colon + 1 + (rest_lead == std::string_view::npos ? 0 : rest_lead);
        rest = detail::trim(rest);
        if (key == "n") n_text = {rest, rest_at};
        if (key == "vars") vars_text = {rest, rest_at};
        if (key == "L") L_text = {rest, rest_at};
        if (key == "seed") seed_text = {rest, rest_at};
        if (key == "X" && !rest.empty()) x_lines.emplace_back(rest, rest_at);
        if (key == "Y" && !rest.empty()) y_lines.emplace_back(rest, rest_at);
      } else if (section == "X") {
        x_lines.emplace_back(body, at);
      } else if (section == "Y") {
        y_lines.emplace_back(body, at);
      } else {
        throw SyntaxError("unexpected text on line " + std::to_string(number), at);
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  if (!n_text) throw InputError("missing section 'n:'");
  if (!vars_text) throw InputError("missing section 'vars:'");
  if (x_lines.empty()) throw InputError("missing section 'X:'");
  if (y_lines.empty()) throw InputError("missing section 'Y:'");

  ProblemFile file;
  {
    std::string s(n_text->first);
    char* stop = nullptr;
    long v = std::strtol(s.c_str(), &stop, 10);
    if (s.empty() || *stop != '\0' || v < 2 || v > 16)
      throw SyntaxError("n must be an integer between 2 and 16", n_text->second);
    file.n = static_cast<int>(v);
  }
  std::size_t m = static_cast<std::size_t>(2 * file.n - 1);
  for (const auto& [name, at] : detail::split_commas(vars_text->first, vars_text->second)) {
    bool ok = !name.empty() && (std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_');
    for (char c : name) ok &= std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    if (!ok) throw SyntaxError("bad variable name '" + std::string(name) + "'", at);
    for (const auto& v : file.variables)
      if (v == name) throw SyntaxError("repeated variable name '" + std::string(name) + "'", at);
    file.variables.emplace_back(name);
  }
  if (file.variables.size() != m)
    throw DimensionMismatch("n = " + std::to_string(file.n) + " needs " + std::to_string(m) + " variables, got " +
                            std::to_string(file.variables.size()));
  file.ring = make_ring(file.variables);
  auto parse_list = [&](const auto& lines, std::vector<Polynomial>& out, const char* label) {
    for (const auto& [body, at] : lines) {
      try {
        out.push_back(parse_polynomial(body, file.ring));
      } catch (const SyntaxError& e) {
        throw SyntaxError(std::string(label) + ": invalid polynomial", at + e.offset());
      } catch (const UnknownVariableError& e) {
        throw UnknownVariableError(e.name(), at + e.offset());
      }
    }
    if (out.size() != static_cast<std::size_t>(file.n - 1))
      throw DimensionMismatch(std::string(label) + " needs " + std::to_string(file.n - 1) + " equation(s), got " +
                              std::to_string(out.size()));
  };
  parse_list(x_lines, file.X, "X");
  parse_list(y_lines, file.Y, "Y");
  if (L_text) {
    std::vector<Rational> c;
    for (const auto& [item, at] : detail::split_commas(L_text->first, L_text->second)) {
      try {
        c.push_back(parse_rational(item));
      } catch (const SyntaxError&) {
        throw SyntaxError("L: bad coefficient '" + std::string(item) + "'", at);
      }
    }
    if (c.size() != m) throw DimensionMismatch("L needs " + std::to_string(m) + " coefficients");
    file.L = LinearForm(std::move(c));
  }
  if (seed_text) {
    std::string s(seed_text->first);
    char* stop = nullptr;
    errno = 0;
    unsigned long long v = std::strtoull(s.c_str(), &stop, 10);
    if (s.empty() || s[0] == '-' || *stop != '\0' || errno == ERANGE)
      throw SyntaxError("seed must be an unsigned 64-bit integer", seed_text->second);
    file.seed = v;
  }
  try {
    file.problem();
  } catch (const PreconditionError& e) {
    throw InputError(e.what());
  } catch (const ZeroPolynomialError& e) {
    throw InputError(e.what());
  }
  return file;
}

inline ProblemFile load_problem_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read problem file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_problem_file(os.str());
}

}  // namespace symdefect
