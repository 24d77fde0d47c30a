#include "asmbench/flowsheet/simulate.hpp"

#include "asmbench/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asmbench::flowsheet {

namespace {

StiffIntegrator make_integrator(SystemOde& ode, const IntegratorOptions& options) {
    return StiffIntegrator(
        ode.dimension(), [&ode](double t, std::span<const double> y, std::span<double> d) { ode.derivative(t, y, d); },
        options);
}

void check_init(std::span<const double> init, std::size_t dim) {
    if (init.size() != dim) throw ConfigError("initial state has wrong dimension");
    for (double v : init)
        if (!std::isfinite(v) || v < 0.0) throw ConfigError("initial state must be finite and non-negative");
}

}  // namespace

std::vector<double> output_grid(double t_end, double dt) {
    if (!(t_end >= 0.0)) throw ConfigError("t_end must be >= 0");
    if (!(dt > 0.0)) throw ConfigError("output interval must be > 0");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor(t_end / dt + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(static_cast<double>(i) * dt);
    if (grid.back() < t_end - 1e-12 * std::max(1.0, t_end)) grid.push_back(t_end);
    else grid.back() = std::min(grid.back(), t_end);
    return grid;
}

Trajectory integrate(SystemOde& ode, double t_end, std::span<const double> init, std::span<const double> output_times,
                     const IntegratorOptions& options) {
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be finite and >= 0");
    check_init(init, ode.dimension());
    std::vector<double> grid(output_times.begin(), output_times.end());
    if (grid.empty()) grid = t_end > 0.0 ? std::vector<double>{0.0, t_end} : std::vector<double>{0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > t_end) throw ConfigError("output time outside [0, t_end]");
        if (i > 0 && !(grid[i] > grid[i - 1])) throw ConfigError("output times must be strictly increasing");
    }

    Trajectory traj;
    traj.labels = ode.state_labels();
    std::size_t next = 0;
    while (next < grid.size() && grid[next] == 0.0) {
        traj.times.push_back(0.0);
        traj.states.emplace_back(init.begin(), init.end());
        ++next;
    }
    if (next == grid.size()) return traj;

    auto integ = make_integrator(ode, options);
    integ.initialize(0.0, init);
    for (; next < grid.size(); ++next) {
        integ.advance_to(grid[next]);
        const auto y = integ.state();
        traj.times.push_back(grid[next]);
        traj.states.emplace_back(y.begin(), y.end());
    }
    traj.steps = integ.steps();
    return traj;
}

double max_scaled_derivative(SystemOde& ode, std::span<const double> y) {
    const auto d = ode.derivative(y);
    double m = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) m = std::max(m, std::abs(d[i]) / std::max(std::abs(y[i]), 1.0));
    return m;
}

SteadyState steady_state(SystemOde& ode, std::span<const double> init, const SteadyOptions& options) {
    check_init(init, ode.dimension());
    if (!(options.t_max >= options.t_min) || options.t_min < 0.0) throw ConfigError("steady_state: need 0 <= t_min <= t_max");

    SteadyState out;
    auto finish = [&](std::vector<double> y, double t, std::size_t steps) {
        out.max_scaled_derivative = max_scaled_derivative(ode, y);
        out.state = std::move(y);
        out.time = t;
        out.steps = steps;
    };

    if (options.t_min == 0.0 && max_scaled_derivative(ode, init) <= options.tol_ss) {
        finish({init.begin(), init.end()}, 0.0, 0);
        return out;
    }

    auto integ = make_integrator(ode, options.integrator);
    integ.initialize(0.0, init);
    integ.advance_to(options.t_min);
    std::vector<double> y(integ.state().begin(), integ.state().end());
    while (true) {
        if (max_scaled_derivative(ode, y) <= options.tol_ss) {
            finish(std::move(y), integ.time(), integ.steps());
            return out;
        }
        if (integ.time() >= options.t_max) {
            std::ostringstream os;
            os << "no steady state within " << options.t_max << " d (max scaled derivative "
               << max_scaled_derivative(ode, y) << " > " << options.tol_ss << ")";
            throw ConvergenceError(os.str());
        }
        integ.step(options.t_max);
        y.assign(integ.state().begin(), integ.state().end());
    }
}

}  // namespace asmbench::flowsheet
