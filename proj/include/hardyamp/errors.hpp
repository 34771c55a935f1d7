#pragma once

#include <stdexcept>
#include <string>

namespace hardyamp {

/// Inputs that violate a type invariant (sizes, index ranges, malformed tables).
class StructuralError : public std::runtime_error {
public:
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Inputs outside an operation's mathematical domain (eps out of range, bad
/// probabilities, inconsistent assignments).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Problem sizes beyond the enumeration / LP guards.
class CapacityError : public std::runtime_error {
public:
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure inside the LP solver (cycling cap, singular pivot).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed external input (CSV/JSON), with position information in the message.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace hardyamp
