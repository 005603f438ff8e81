#pragma once

#include <stdexcept>
#include <string>

namespace poscoh {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input data is malformed: unknown identifiers, cycles, bad shapes, bad JSON.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The input is well formed but violates the precondition of an operation.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A grading-dependent operation was asked of an ungraded poset.
class UngradedError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A cochain complex whose differential does not square to zero, or a
/// morphism that does not respect relations.
class BrokenComplexError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

}  // namespace poscoh
