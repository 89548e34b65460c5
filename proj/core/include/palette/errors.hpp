#pragma once

#include <stdexcept>

namespace palette {

// Malformed graph input: self-loops, parallel edges, cycles where a forest is
// required, colors that are not available at an edge.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric parameter outside its documented domain.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An operation refused because its input does not satisfy a precondition
// that cannot be expressed as a single bad parameter (for example a trace
// that was not produced by First-Fit, or an unfair trace).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace palette
