#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mhlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), position(pos) {}
  std::size_t position;
};

struct NotDivisible : Error {
  NotDivisible() : Error("polynomial division leaves a nonzero remainder") {}
};

struct PreconditionError : Error {
  using Error::Error;
};

/// A mathematical guarantee was violated; indicates a bug in this library.
struct InternalError : Error {
  using Error::Error;
};

struct EmptyRegion : Error {
  EmptyRegion() : Error("constraint set has empty intersection with the unit square") {}
};

struct IllConditioned : Error {
  using Error::Error;
};

struct UnresolvedScaling : Error {
  using Error::Error;
};

struct IrrationalRoot : Error {
  using Error::Error;
};

struct OscillationBudgetExceeded : Error {
  using Error::Error;
};

}  // namespace mhlab
