#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nfasat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed sample text. `line` is 1-based; 0 when not tied to a line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Instance generation gave up: entry cap or wall-clock deadline reached.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class GenerationTimeout : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

/// The brute-force oracle refuses instances above its enumeration bound.
class OracleBoundError : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    using Error::Error;
};

}  // namespace nfasat
