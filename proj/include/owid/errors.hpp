#pragma once

#include <stdexcept>
#include <string>

namespace owid {

// Invalid argument supplied by the caller (bad index, p outside [0,1], ...).
class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Input is well-formed but not a physical state (negative eigenvalue,
// non-Hermitian matrix, trace != 1).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A closed form was asked for outside the region where it is valid.
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Numerical search failed to meet its tolerance. Carries the best value seen.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_value)
        : std::runtime_error(what), best_value_(best_value) {}

    double best_value() const noexcept { return best_value_; }

private:
    double best_value_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace owid
