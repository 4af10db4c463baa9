#pragma once

#include <stdexcept>
#include <string>

namespace graphshift {

// Bad arguments, malformed files, infeasible generator targets.
struct InvalidInput : std::runtime_error {
  explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

// An iterate left the simplex by more than roundoff; the message names the
// step that produced it.
struct NumericalFailure : std::runtime_error {
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

// x^T A x = 0, so the replicator denominator vanishes. Callers route such
// states to neighborhood expansion or declare a singleton mode.
struct DegenerateState : std::runtime_error {
  explicit DegenerateState(const std::string& what) : std::runtime_error(what) {}
};

// Parse failure with the 1-based line it occurred on.
struct ParseError : InvalidInput {
  ParseError(const std::string& what, long line)
      : InvalidInput(what + " (line " + std::to_string(line) + ")"), line(line) {}
  long line;
};

}  // namespace graphshift
