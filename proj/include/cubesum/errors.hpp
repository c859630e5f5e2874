#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace cubesum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(std::string name)
      : Error("unbound variable '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Raised when a divisor does not divide the dividend over the integers.
/// `remainder_term` is the text form of the first term that could not be
/// cancelled.
class InexactDivision : public Error {
 public:
  explicit InexactDivision(std::string remainder_term)
      : Error("inexact division: cannot cancel term " + remainder_term),
        remainder_term_(std::move(remainder_term)) {}
  const std::string& remainder_term() const noexcept { return remainder_term_; }

 private:
  std::string remainder_term_;
};

class UnknownIdentity : public Error {
 public:
  explicit UnknownIdentity(const std::string& id)
      : Error("unknown identity '" + id + "'") {}
};

class UnknownFamily : public Error {
 public:
  explicit UnknownFamily(const std::string& id)
      : Error("unknown derivation family '" + id + "'") {}
};

class ResidueMismatch : public Error {
 public:
  ResidueMismatch(int residue, long long shift)
      : Error("shift " + std::to_string(shift) + " is not congruent to " +
              std::to_string(residue) + " mod 6") {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t states, std::uint64_t budget)
      : Error("search needs " + std::to_string(states) +
              " candidate states, budget is " + std::to_string(budget)),
        states_(states) {}
  std::uint64_t states() const noexcept { return states_; }

 private:
  std::uint64_t states_;
};

class NoFourCubeFamilyMatch : public Error {
 public:
  using Error::Error;
};

/// Malformed text or JSON input. Line and column are 1-based; 0 means the
/// position is not known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(line == 0 ? what
                        : what + " at line " + std::to_string(line) +
                              ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cubesum
