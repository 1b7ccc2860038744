#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace oscnet {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, violated invariants, dimension mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A line of an edge list or config that could not be parsed.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A node with zero weighted degree; D^{-1/2} does not exist.
class DegreeError : public ValidationError {
 public:
  explicit DegreeError(std::size_t node)
      : ValidationError("node " + std::to_string(node) +
                        " has zero weighted degree (D^{-1/2} undefined)"),
        node_(node) {}

  std::size_t node() const noexcept { return node_; }

 private:
  std::size_t node_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Numerical failure: a decomposition or series that could not be trusted.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The Laplacian has eigenvalues off the real axis (or below zero).
class SpectrumError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Two constructions that must agree did not. Always an implementation bug.
class ConsistencyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace oscnet
