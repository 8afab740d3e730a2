#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pwcn {

// Base class for every error raised by the library. The CLI maps
// DataError-derived exceptions to exit code 1 and UsageError to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed files, misaligned annotations, bad values.
class DataError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Carries the 1-based line number of the offence
// (0 when unknown).
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t line)
      : DataError(line > 0 ? "line " + std::to_string(line) + ": " + what
                           : what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Same as ParseError, raised for fixed-format numeric files.
class FormatError : public ParseError {
 public:
  using ParseError::ParseError;
};

// Aspect offsets, tokens or parses that do not line up.
class AlignmentError : public DataError {
 public:
  using DataError::DataError;
};

// Dependency heads that do not form a forest.
class StructureError : public DataError {
 public:
  using DataError::DataError;
};

// Non-finite values in logits or gradients.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Tensor or sequence lengths that disagree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Violated precondition on a function argument.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Bad command-line usage.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwcn
