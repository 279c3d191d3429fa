#pragma once

#include <stdexcept>
#include <string>

namespace cvrg {

/// A size or shape limit of an exact routine was exceeded.
class GuardViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No solution exists (e.g. a customer heavier than the capacity).
class Infeasible : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed instance or solution document.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line)
    {
    }
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace cvrg
