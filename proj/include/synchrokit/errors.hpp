#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace synchrokit {

/// Base for domain outcomes that callers are expected to handle. Argument
/// misuse is reported with the standard std::invalid_argument/out_of_range.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// The automaton does not satisfy the hypothesis an operation requires.
class HypothesisFailed : public Error {
 public:
  using Error::Error;
};

/// An operation's stated precondition does not hold for its arguments.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// A structure certificate could not be completed although the hypothesis
/// holds. Never expected; reported as a counterexample.
class CertificateContradiction : public Error {
 public:
  using Error::Error;
};

/// None of the case constructions produced a corank-3 word. Never expected.
class ConstructionContradiction : public Error {
 public:
  using Error::Error;
};

/// A proven bound was exceeded on a concrete automaton. Never expected.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured work budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t count, std::uint64_t budget)
      : Error("exhaustive enumeration would visit " + std::to_string(count) + " automata, budget is " +
              std::to_string(budget)),
        count_(count) {}
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t count_;
};

}  // namespace synchrokit
