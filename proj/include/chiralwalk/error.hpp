#pragma once

#include <stdexcept>
#include <string>

namespace chiralwalk {

// Argument or precondition violation (bad sizes, mismatched dimensions, bad packet geometry).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidSize : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Graph shape does not admit the requested operation (e.g. gauging a graph with loops).
class TopologyError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Asymptotic scattering results do not apply (k0 too close to 0 or pi).
class ConditionInapplicable : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// Solver failure: non-convergent root, eigensolver error, residual breach.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace chiralwalk
