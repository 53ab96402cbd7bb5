#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tardis {

// Base class for all library errors. The CLI maps each subclass to an exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Input violates a documented precondition (not-a-tardis, wrong shape, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

// No solution exists (e.g. no happy assignment, infeasible candidate set).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

// A configured size or state budget would be exceeded.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

}  // namespace tardis
