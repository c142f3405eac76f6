#pragma once

#include <stdexcept>
#include <string>

namespace knotflux {

/// Base class for all library errors. `kind()` gives a stable machine-readable
/// tag used by the CLI's structured error records.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual const char* kind() const noexcept { return "error"; }
};

class InvalidParameterError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "invalid_parameter"; }
};

/// Geometry too degenerate to evaluate (touching/intersecting curves,
/// zero accepted Monte Carlo samples, ...).
class DegeneracyError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "geometric_degeneracy"; }
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "insufficient_data"; }
};

class AssignmentError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "assignment_error"; }
};

class SingularFitError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "singular_fit"; }
};

class UnsupportedClassificationError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "unsupported_classification"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io_error"; }
};

} // namespace knotflux
