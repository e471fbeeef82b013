#pragma once

#include <stdexcept>
#include <string>

namespace misrep {

// Vectors or matrices indexed by incompatible label sets.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Weights that do not form a probability vector (negative entries, or a sum
// further than the input tolerance from one).
class ProbabilityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A parameter or precondition outside the documented domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An LP that the model guarantees to be bounded came back unbounded.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace misrep
