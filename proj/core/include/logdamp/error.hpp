#pragma once

#include <stdexcept>
#include <string>

namespace logdamp {

/// Bad argument value (non-finite, out of range, malformed key).
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation requested outside the damping regime where it is defined,
/// e.g. asking for the real-root threshold when mu <= 2.
struct RegimeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Construction collapsed to the zero object (e.g. equal-width difference datum).
struct DegenerateDatum : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// 0/0-type ratio with no defined value.
struct UndefinedRatio : std::domain_error {
    using std::domain_error::domain_error;
};

/// Integral does not converge for the requested exponent range.
struct DivergentIntegral : std::domain_error {
    using std::domain_error::domain_error;
};

/// Adaptive quadrature gave up; carries the best estimate it reached.
struct NoConvergence : std::runtime_error {
    NoConvergence(const std::string& msg, double best, double err)
        : std::runtime_error(msg), best_estimate(best), error_estimate(err) {}
    double best_estimate;
    double error_estimate;
};

/// Rate fit is impossible (too few points or nonpositive values).
struct CannotFit : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested time stepping would exceed the step-count budget.
struct StepOverflow : std::length_error {
    using std::length_error::length_error;
};

}  // namespace logdamp
