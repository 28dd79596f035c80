#pragma once

#include <stdexcept>
#include <string>

namespace pwb {

// Bad argument to a pure computation (empty interval, p outside [2,6], ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Parameters outside every range for which a closed form is proven.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions; keeps what it had.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best, double error)
        : std::runtime_error(what), best_(best), error_(error) {}
    double best_estimate() const noexcept { return best_; }
    double error_estimate() const noexcept { return error_; }

private:
    double best_;
    double error_;
};

}  // namespace pwb
