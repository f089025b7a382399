#pragma once

#include <stdexcept>
#include <string>

namespace hbvp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user configuration: bad intervals, node counts, unknown keys.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Input data that cannot be represented (non-finite samples, wrong kind).
class DataError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested outside the domain of a function.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented invariant of an input object does not hold.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Boundary parametrization is not unit speed or not a closed curve.
class ParametrizationError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

/// Boundary curve is traversed clockwise.
class OrientationError : public InvariantError {
public:
    using InvariantError::InvariantError;
};

/// Numerical failure: overflow, non-convergence, unrepresentable series.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace hbvp
