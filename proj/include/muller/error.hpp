#pragma once

#include <stdexcept>
#include <string>

namespace muller {

// Bad caller input: non-positive charges, infeasible electron counts,
// malformed grids. The CLI maps this to exit status 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Every overlap eigenvalue fell below the pruning threshold.
class DegenerateBasis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotPositiveSemidefinite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A density matrix failed its 0 <= lambda <= cap / orthonormality checks.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedGeometry : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical machinery misbehaved (e.g. a shooting bracket did not bracket).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace muller
