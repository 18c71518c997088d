#ifndef TSBOUND_ERRORS_HPP
#define TSBOUND_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tsbound {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or out-of-contract input (non-finite values, bad lengths, negative
// arguments, unparsable files).
class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& what) : Error(what) {}
};

// Series shorter than an operation requires; carries the minimum length.
class TooShortError : public InvalidInputError {
public:
    TooShortError(const std::string& what, std::size_t required)
        : InvalidInputError(what), required_length(required) {}
    std::size_t required_length;
};

// Fewer than two windows: the spectrum variance is not defined.
class InsufficientWindowsError : public InvalidInputError {
public:
    InsufficientWindowsError(const std::string& what, std::size_t required)
        : InvalidInputError(what), required_windows(required) {}
    std::size_t required_windows;
};

// Zero-variance inputs, undefined correlations, all-zero weights and similar.
class DegenerateError : public Error {
public:
    explicit DegenerateError(const std::string& what) : Error(what) {}
};

// Rank-deficient regression; column is 0-based in the full design matrix
// (intercept included when present).
class DegenerateRegressionError : public DegenerateError {
public:
    DegenerateRegressionError(const std::string& what, std::size_t column)
        : DegenerateError(what), column(column) {}
    std::size_t column;
};

// ACF(1) <= 0: the half-life concept presumes positive lag-1 autocorrelation.
class UndefinedHalfLifeError : public DegenerateError {
public:
    explicit UndefinedHalfLifeError(const std::string& what) : DegenerateError(what) {}
};

} // namespace tsbound

#endif
