#pragma once

#include <stdexcept>
#include <string>

namespace normlab {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Incompatible matrix or vector dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Eigensolver failed to converge within the sweep cap.
struct SolverError : Error {
    SolverError(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

// Argument outside the domain of a scalar function (or an eigenvalue
// below the clamp slack for functions on [0, inf)).
struct DomainError : Error {
    DomainError(const std::string& msg, double value_)
        : Error(msg), value(value_) {}
    double value;
};

// A concavity/convexity tag contradicted by the data; carries the knot
// or grid point where the contradiction showed up.
struct ShapeError : Error {
    ShapeError(const std::string& msg, double where_)
        : Error(msg), where(where_) {}
    double where;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : Error {
    using Error::Error;
};

// Entrywise eigenvalue dominance required for a certificate fails.
struct DominanceError : Error {
    DominanceError(const std::string& msg, int index_)
        : Error(msg), index(index_) {}
    int index;
};

// An emitted certificate failed its independent re-verification.
struct CertificateError : Error {
    CertificateError(const std::string& msg, double residual_)
        : Error(msg), residual(residual_) {}
    double residual;
};

// Malformed JSON input or unknown identifiers in files/CLI.
struct ParseError : Error {
    using Error::Error;
};

}  // namespace normlab
