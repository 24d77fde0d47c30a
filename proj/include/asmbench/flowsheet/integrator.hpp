#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace asmbench::flowsheet {

enum class StiffMethod {
    extrapolation,  // linearly implicit Bulirsch-Stoer (GSL bsimp)
    bdf,            // variable-order backward differentiation (GSL msbdf)
};

struct IntegratorOptions {
    StiffMethod method = StiffMethod::extrapolation;
    double rtol = 1e-6;
    double atol = 1e-8;
    double initial_step = 1e-4;  // d
    double max_step = 0.0;       // d; 0 = unlimited

    void validate() const;
};

/// Autonomous right-hand side dy/dt = f(t, y).
using Rhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

/// Adaptive stiff integrator (GSL msbdf or bsimp) with a forward-difference Jacobian.
/// Local error per component is held to atol + rtol |y_i|. Output times are hit exactly
/// rather than interpolated.
class StiffIntegrator {
public:
    StiffIntegrator(std::size_t dimension, Rhs rhs, IntegratorOptions options = {});
    ~StiffIntegrator();
    StiffIntegrator(StiffIntegrator&&) noexcept;
    StiffIntegrator& operator=(StiffIntegrator&&) noexcept;

    void initialize(double t0, std::span<const double> y0);

    /// Advance by one accepted step without passing t_limit. Throws SolverError on
    /// step-size collapse or a non-finite state.
    void step(double t_limit);

    /// Step repeatedly until time() == t.
    void advance_to(double t);

    double time() const;
    std::span<const double> state() const;

    std::size_t steps() const;
    std::size_t rhs_evaluations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace asmbench::flowsheet
