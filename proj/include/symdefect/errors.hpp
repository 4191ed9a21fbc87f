#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace symdefect {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial text; `offset` is the byte position of the problem.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownVariableError : public Error {
 public:
  UnknownVariableError(const std::string& name, std::size_t offset)
      : Error("unknown variable '" + name + "' at byte " + std::to_string(offset)),
        name_(name),
        offset_(offset) {}
  const std::string& name() const noexcept { return name_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::string name_;
  std::size_t offset_;
};

/// Operands living in different rings, or a point of the wrong length.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// An operation that needs a leading form was handed the zero polynomial.
class ZeroPolynomialError : public Error {
 public:
  using Error::Error;
};

/// A computation ran out of its step or time allowance.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, std::uint64_t steps, std::size_t basis_size,
                 std::size_t pending_pairs)
      : Error(what + " (steps=" + std::to_string(steps) + ", basis=" +
              std::to_string(basis_size) + ", pending pairs=" + std::to_string(pending_pairs) +
              ")"),
        steps_(steps),
        basis_size_(basis_size),
        pending_pairs_(pending_pairs) {}
  std::uint64_t steps() const noexcept { return steps_; }
  std::size_t basis_size() const noexcept { return basis_size_; }
  std::size_t pending_pairs() const noexcept { return pending_pairs_; }

 private:
  std::uint64_t steps_;
  std::size_t basis_size_;
  std::size_t pending_pairs_;
};

/// A system handed to the zero-dimensional solver has a positive-dimensional variety.
class PositiveDimensionError : public Error {
 public:
  PositiveDimensionError(const std::string& what, int dimension)
      : Error(what), dimension_(dimension) {}
  int dimension() const noexcept { return dimension_; }

 private:
  int dimension_;
};

/// Randomized procedures that could not reach agreement (slices, retries, samples).
class DisagreementError : public Error {
 public:
  using Error::Error;
};

/// A target point lies on the closure of the critical values.
class OnCriticalValuesError : public Error {
 public:
  OnCriticalValuesError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// A precondition of a geometric construction does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A bounded randomized search (admissible forms, invertible maps) ran out of draws.
class RetriesExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed problem file or command-line value (missing section, wrong count, unreadable file).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: singular linear system or diverging residual.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace symdefect
