#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ninner {

// Base class for everything this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Operands of incompatible sizes; carries both lengths.
class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)),
        expected(expected),
        got(got) {}

  std::size_t expected;
  std::size_t got;
};

// Malformed input text; `line` is 1-based, 0 when not tied to a file line.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what, std::size_t line = 0)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line(line) {}

  std::size_t line;
};

// A linear system with no unique solution; `witness` names the vanishing
// quantity (e.g. the determinant that came out zero).
class SingularSystem : public Error {
 public:
  SingularSystem(const std::string& what, std::string witness)
      : Error(what + " [witness: " + witness + "]"), witness(std::move(witness)) {}

  std::string witness;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what) {}
};

// An identity the implementation itself guarantees failed to hold.
// Signals a bug in this library, never a problem with the caller's data.
class InternalConsistency : public Error {
 public:
  explicit InternalConsistency(const std::string& what) : Error(what) {}
};

}  // namespace ninner
