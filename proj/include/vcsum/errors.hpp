#pragma once

#include <stdexcept>
#include <string>

namespace vcsum {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ground sizes, moduli or dimensions of two operands do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// An analytical operation received an empty family or point set.
class EmptyFamilyError : public Error {
public:
    EmptyFamilyError() : Error("operation requires a nonempty family") {}
    using Error::Error;
};

/// A numeric parameter is outside its documented range (composite modulus, k <= 0, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// An exact integer result does not fit the host integer width.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// A configured size guard would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The requested set is shattered, so no absent pattern exists.
class WitnessNotFoundError : public Error {
public:
    using Error::Error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace vcsum
