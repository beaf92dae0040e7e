#pragma once

#include <stdexcept>
#include <string>

namespace cohstat {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands of incompatible shape.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside the domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// An iterative method or tolerance target was not met.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// The truncated Fock space is too small for the requested coherent state.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// A computed quantity violates an invariant by more than rounding allows.
class InvariantError : public Error {
public:
    using Error::Error;
};

} // namespace cohstat
