#ifndef KCHEEGER_ERRORS_HPP
#define KCHEEGER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kcheeger {

/// Base of every error the library throws. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An argument is outside its documented range. `parameter()` names it.
class ParameterError : public Error {
public:
  ParameterError(std::string parameter, const std::string& what)
      : Error("invalid " + parameter + ": " + what), parameter_(std::move(parameter)) {}

  const std::string& parameter() const noexcept { return parameter_; }

private:
  std::string parameter_;
};

/// Malformed text input. Line numbers are 1-based.
class ParseError : public Error {
public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Well-formed input that violates a structural invariant (self-loop, duplicate edge, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A quantity is undefined for the given arguments (e.g. Cheeger ratio of the empty set).
class DomainError : public Error {
public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed the supported problem size.
class CapacityError : public Error {
public:
  using Error::Error;
};

/// Iterative numerics failed (non-convergence, degenerate eigenvector).
class NumericalError : public Error {
public:
  using Error::Error;
};

/// Every sampled partition was rejected by the best-partition search.
class SearchFailure : public Error {
public:
  using Error::Error;
};

} // namespace kcheeger

#endif // KCHEEGER_ERRORS_HPP
