#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dbnb {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Data that does not conform to a declared schema, or an invalid schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Caller passed an out-of-range or inconsistent argument.
class ArgumentError : public Error {
public:
    using Error::Error;
};

/// Operation invoked on an object in the wrong state (e.g. an unfitted model).
class StateError : public Error {
public:
    using Error::Error;
};

}  // namespace dbnb
