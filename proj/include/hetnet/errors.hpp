#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

/// Malformed or inconsistent user input (group specs, field specs, flags).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Integration or root-finding failure.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An algebraic structure that should exist does not (e.g. a non-dihedral
/// normalizer quotient). Usually signals a bug or a non-orthogonal input.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigen-data sits on a boundary the generic theory excludes (ties, product equal to 1).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hetnet
