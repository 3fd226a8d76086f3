#pragma once

#include <stdexcept>
#include <string>

namespace lsys {

// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error { using Error::Error; };
class AffineError : public Error { using Error::Error; };
class ProjectionError : public Error { using Error::Error; };
class WeightError : public Error { using Error::Error; };
class DomainError : public Error { using Error::Error; };
class EvalError : public Error { using Error::Error; };
// Operand kinds do not fit the operation (a point where a scalar is needed).
class TypeError : public EvalError { using EvalError::EvalError; };
class DefinitionError : public Error { using Error::Error; };
class StateError : public Error { using Error::Error; };
class ArityError : public Error { using Error::Error; };
class ExtractionError : public Error { using Error::Error; };

/// Syntax or validation error located in definition source text.
class ParseError : public Error {
public:
    ParseError(int line, int column, std::string message, std::string token)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message +
                (token.empty() ? std::string() : " (near '" + token + "')")),
          line_(line), column_(column), message_(std::move(message)), token_(std::move(token)) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }
    const std::string& token() const noexcept { return token_; }

private:
    int line_;
    int column_;
    std::string message_;
    std::string token_;
};

}  // namespace lsys
