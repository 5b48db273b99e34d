#pragma once

#include <stdexcept>
#include <string>

namespace cvent {

// Thrown on malformed arguments (non-monotone grids, bad widths, ...).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Requested construction exceeds the hard Fock cutoff cap.
struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A grid does not cover the state (normalization defect too large).
struct coverage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Resolution doubling hit the cap before the estimate settled.
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& msg, double last, double previous)
        : std::runtime_error(msg), last_estimate(last), previous_estimate(previous) {}
    double last_estimate;
    double previous_estimate;
};

// Internal cross-checks disagree (unphysical covariance, sandwich failure).
struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Operation not defined for this state representation.
struct unsupported_state : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cvent
