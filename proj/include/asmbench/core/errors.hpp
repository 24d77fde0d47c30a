#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace asmbench {

/// Invalid user input: bad config keys, out-of-range parameters, inconsistent specs.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure inside the integrator (step-size collapse, non-finite state).
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double time, std::vector<double> state)
        : std::runtime_error(what), time_(time), state_(std::move(state)) {}

    double time() const noexcept { return time_; }
    const std::vector<double>& state() const noexcept { return state_; }

private:
    double time_;
    std::vector<double> state_;
};

/// A run finished but did not satisfy its convergence contract.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace asmbench
