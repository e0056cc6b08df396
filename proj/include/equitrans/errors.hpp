#pragma once

#include <stdexcept>
#include <string>

namespace equitrans {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (CLI exit code 2).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A mathematical condition fails (CLI exit code 1).
class MathFailure : public Error {
 public:
  using Error::Error;
};

/// Seeded generic-position sampling ran out of its retry budget.
class ResampleFailure : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

/// Truncation cutoff too small to decide whether a Novikov entry is a unit.
class Indeterminate : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

/// A limit matrix has spectrum too close to the imaginary axis.
class NonHyperbolic : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A rank or dimension hypothesis needed by a construction does not hold
/// (CLI exit code 1).
class Obstruction : public MathFailure {
 public:
  using MathFailure::MathFailure;
};

}  // namespace equitrans
