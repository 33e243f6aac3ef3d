/**
 * @file errors.hpp
 * @brief Exception types thrown by the ppbnb library.
 */
#ifndef PPBNB_ERRORS_HPP
#define PPBNB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ppbnb {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Vectors of incompatible or unsupported dimension.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Bisection requested on a box of zero diameter.
class DegenerateBoxError : public Error {
public:
    using Error::Error;
};

/// Point outside the problem domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Objective or constraint evaluation produced a non-finite value.
class EvaluationError : public Error {
public:
    using Error::Error;
};

/// Normalization with nadir_i == ideal_i.
class DegenerateRangeError : public Error {
public:
    using Error::Error;
};

/// Invalid parameters, unknown problems, malformed configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Live box collection exceeded the configured cap.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ppbnb

#endif  // PPBNB_ERRORS_HPP
