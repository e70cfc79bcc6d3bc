#pragma once

#include <stdexcept>
#include <string>

namespace spinstat {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed expression or spec file. `line`/`column` are 1-based; for
// single-line expressions `line` is 1 and `column` is the offset of the
// offending token.
struct ParseError : Error {
    ParseError(const std::string& msg, int line_, int column_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
    int line;
    int column;
};

// A well-formed input that violates a model precondition (zero M+,
// spectral reality failure, identically zero energy function, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Evaluation hit a zero of the denominator.
struct PoleError : ValidationError {
    using ValidationError::ValidationError;
};

// Division by the zero rational function.
struct ZeroDivideError : ValidationError {
    using ValidationError::ValidationError;
};

// E^2 < 0 at a requested mode (integer spin with |M+| < |M-|).
struct SpectralRealityError : ValidationError {
    using ValidationError::ValidationError;
};

// E ~ 0: the sqrt(2E) normalization degenerates.
struct GaplessModeError : ValidationError {
    using ValidationError::ValidationError;
};

// A consistency check failed that should hold for every valid input;
// indicates a bug or a numerically contaminated sample.
struct InternalError : Error {
    using Error::Error;
};

}  // namespace spinstat
