#pragma once

#include <stdexcept>
#include <string>

namespace nced {

/// Precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A linear solve or similar numerical step could not be trusted.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input is valid but the requested quantity does not exist for it.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Bisection ran out of iterations; carries the last bracket.
class ConvergenceFailure : public std::runtime_error {
public:
    ConvergenceFailure(const std::string& what, double lower, double upper)
        : std::runtime_error(what), lower_(lower), upper_(upper) {}

    double lower() const noexcept { return lower_; }
    double upper() const noexcept { return upper_; }

private:
    double lower_;
    double upper_;
};

/// Antenna search reached the end of its grid without meeting the target.
class SearchExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace nced
