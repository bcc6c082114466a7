/// @file include/lorcyl/errors.hpp
/// @brief Exception types shared by every lorcyl module.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lorcyl {

/// Base class of all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Coefficients do not define a Lorentzian (-,+) form.
class SignatureError : public Error {
public:
    SignatureError(const std::string& what, double discriminant)
        : Error(what), discriminant_(discriminant) {}

    /// E·G + F² (flat case) or -(gxx·gyy - gxy²) (field case) at the offending point.
    double discriminant() const noexcept { return discriminant_; }

private:
    double discriminant_;
};

/// Argument outside the domain of an operation (zero vector, spacelike input, log of
/// a non-positive number, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation produced an infinite value (division by zero, exp overflow).
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Fields or grids that must match do not.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Invalid grid or oracle configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Syntax or semantic error in a metric spec file or expression.
/// Line and column are 1-based; column 0 means "whole line".
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(format(message, line, column)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, std::size_t line, std::size_t column) {
        std::string out = "line " + std::to_string(line);
        if (column != 0) out += ", column " + std::to_string(column);
        return out + ": " + message;
    }

    std::size_t line_;
    std::size_t column_;
};

}  // namespace lorcyl
