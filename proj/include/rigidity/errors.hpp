#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rigidity {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different variable lists, or a name is not in the list.
class VariableMismatch : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Exact division was requested but the divisor does not divide the dividend.
class NotDivisible : public Error {
public:
    using Error::Error;
};

/// Candidate derivation does not map the relation ideal into itself.
class IllDefined : public Error {
public:
    using Error::Error;
};

/// Input has a shape the operation does not support.
class Unsupported : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed. Indicates a bug, never bad input.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

/// Exhaustive search would exceed the configured candidate ceiling.
class SearchTooLarge : public Error {
public:
    using Error::Error;
};

/// Syntax error in polynomial text, positioned at a 1-based line and column.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : Error(message + " at line " + std::to_string(line) + ", column " +
                std::to_string(column)),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace rigidity
