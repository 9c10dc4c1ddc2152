#pragma once

#include <stdexcept>
#include <string>

namespace opflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Input fails a structural check (not Hermitian, not a projection, not Lagrangian, ...).
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A spectral function is undefined at some eigenvalue.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// Operator norm is outside the (open or closed) unit ball where a transform is defined.
class OutOfBallError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
  public:
    using Error::Error;
};

/// An eigenvalue sits on the edge of a spectral window.
class BoundaryCollisionError : public Error {
  public:
    using Error::Error;
};

class NotInCoveringError : public Error {
  public:
    using Error::Error;
};

class SurgeryViolationError : public Error {
  public:
    using Error::Error;
};

/// Operator that must be injective/invertible is (numerically) singular.
class DegeneracyError : public Error {
  public:
    using Error::Error;
};

/// Unitary with an eigenvalue on the branch cut of the principal logarithm.
class BranchCutError : public Error {
  public:
    using Error::Error;
};

class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Adaptive refinement ran out of depth.
class NonConvergenceError : public Error {
  public:
    using Error::Error;
};

/// Counting window cannot be placed away from the spectrum.
class ConditioningError : public Error {
  public:
    using Error::Error;
};

class EndpointMismatchError : public Error {
  public:
    using Error::Error;
};

}  // namespace opflow
