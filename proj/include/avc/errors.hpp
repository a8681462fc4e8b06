#pragma once

#include <stdexcept>
#include <string>

namespace avc {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input file is missing or is not well-formed JSON for the requested schema.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A specification parsed but violates one of its invariants.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// Toeplitz covariance built from an autocorrelation has a genuinely negative eigenvalue.
class NotPSD : public Error {
public:
    NotPSD(const std::string& what, double eigenvalue) : Error(what), eigenvalue_(eigenvalue) {}
    double eigenvalue() const noexcept { return eigenvalue_; }

private:
    double eigenvalue_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Iterative solver stopped at its iteration cap with a residual above tolerance.
class SolverDidNotConverge : public Error {
public:
    SolverDidNotConverge(const std::string& what, double residual)
        : Error(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

}  // namespace avc
