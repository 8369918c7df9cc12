#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace akgeo {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expression-text parse failure; offset is the byte position in the input.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct EvalError : Error {
  enum class Kind { DomainViolation, DivisionByZero, UnboundParameter, NonFinite };
  EvalError(Kind kind, const std::string& msg) : Error(msg), kind(kind) {}
  Kind kind;
};

// Degenerate coframe, singular metric, admissibility violation, bad chart point.
struct GeometryError : Error {
  using Error::Error;
};

// Petrov eigenstructure inconsistent with the tolerance settings.
struct ClassificationError : Error {
  using Error::Error;
};

}  // namespace akgeo
