#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace injeqt
{

/// Root of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Malformed OpenQASM source. Carries the 1-based position of the offending token.
class SyntaxError : public Error
{
public:
    SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
        : Error("line " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line), column_(column)
    {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class UnsupportedGate : public Error
{
public:
    using Error::Error;
};

class IndexError : public Error
{
public:
    using Error::Error;
};

/// A gate acts on a qubit after that qubit was measured.
class MeasurementOrderError : public Error
{
public:
    using Error::Error;
};

class NotClifford : public Error
{
public:
    using Error::Error;
};

class DomainError : public Error
{
public:
    using Error::Error;
};

class CapacityError : public Error
{
public:
    using Error::Error;
};

class ConfigError : public Error
{
public:
    using Error::Error;
};

}  // namespace injeqt
