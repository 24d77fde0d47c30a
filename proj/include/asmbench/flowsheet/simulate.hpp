#pragma once

#include "asmbench/flowsheet/integrator.hpp"
#include "asmbench/flowsheet/ode.hpp"

namespace asmbench::flowsheet {

struct Trajectory {
    std::vector<double> times;                 // d, strictly increasing
    std::vector<std::vector<double>> states;   // one packed state per time
    std::vector<std::string> labels;           // "<unit>.<label>" per state entry
    std::size_t steps = 0;
};

/// Integrates from t = 0 to t_end and samples the state at `output_times` (must lie in
/// [0, t_end], sorted). An empty grid yields the initial state and t_end.
Trajectory integrate(SystemOde& ode, double t_end, std::span<const double> init,
                     std::span<const double> output_times = {}, const IntegratorOptions& options = {});

/// Evenly spaced output grid 0, dt, ..., t_end (t_end always included).
std::vector<double> output_grid(double t_end, double dt);

/// max_i |dy_i/dt| / max(|y_i|, 1).
double max_scaled_derivative(SystemOde& ode, std::span<const double> y);

struct SteadyOptions {
    double tol_ss = 1e-5;    // 1/d
    double t_min = 50.0;     // always integrate at least this long, d
    double t_max = 3000.0;   // give up after this, d
    IntegratorOptions integrator;
};

struct SteadyState {
    std::vector<double> state;
    double max_scaled_derivative = 0.0;
    double time = 0.0;
    std::size_t steps = 0;
};

/// Integrates until the scaled-derivative criterion holds (not before t_min).
/// Throws ConvergenceError if t_max is reached first.
SteadyState steady_state(SystemOde& ode, std::span<const double> init, const SteadyOptions& options = {});

}  // namespace asmbench::flowsheet
