#include "asmbench/flowsheet/integrator.hpp"

#include "asmbench/core/errors.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_odeiv2.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>

namespace asmbench::flowsheet {

namespace {

void disable_gsl_abort() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

void IntegratorOptions::validate() const {
    if (!(rtol > 0.0) || !(atol > 0.0) || !std::isfinite(rtol) || !std::isfinite(atol))
        throw ConfigError("integrator tolerances must be finite and > 0");
    if (!(initial_step > 0.0)) throw ConfigError("integrator initial step must be > 0");
    if (!(max_step >= 0.0)) throw ConfigError("integrator max step must be >= 0");
}

struct StiffIntegrator::Impl {
    std::size_t dim;
    Rhs rhs;
    IntegratorOptions options;

    gsl_odeiv2_system sys{};
    gsl_odeiv2_driver* driver = nullptr;
    gsl_odeiv2_step* stepper = nullptr;
    gsl_odeiv2_control* control = nullptr;
    gsl_odeiv2_evolve* evolve = nullptr;

    double t = 0.0;
    double h = 0.0;
    std::vector<double> y, f0, y_pert, f_pert;
    std::exception_ptr pending;
    std::size_t rhs_calls = 0;
    std::size_t step_count = 0;

    Impl(std::size_t n, Rhs f, IntegratorOptions opt)
        : dim(n), rhs(std::move(f)), options(opt), y(n), f0(n), y_pert(n), f_pert(n) {
        disable_gsl_abort();
        sys = gsl_odeiv2_system{&Impl::gsl_rhs, &Impl::gsl_jacobian, n, this};
        const auto* type = opt.method == StiffMethod::bdf ? gsl_odeiv2_step_msbdf : gsl_odeiv2_step_bsimp;
        driver = gsl_odeiv2_driver_alloc_standard_new(&sys, type, opt.initial_step, opt.atol, opt.rtol, 1.0, 0.0);
        if (!driver) throw std::bad_alloc();
        stepper = driver->s;
        control = driver->c;
        evolve = driver->e;
    }

    Impl(const Impl&) = delete;
    Impl& operator=(const Impl&) = delete;
    ~Impl() { release(); }

    void release() {
        if (driver) gsl_odeiv2_driver_free(driver);
        driver = nullptr;
        evolve = nullptr;
        control = nullptr;
        stepper = nullptr;
    }

    void eval(double time, const double* state, double* out) {
        ++rhs_calls;
        rhs(time, std::span<const double>(state, dim), std::span<double>(out, dim));
    }

    // Exceptions must not cross the C library; park them and report a failed evaluation.
    static int gsl_rhs(double time, const double state[], double out[], void* self) {
        auto* impl = static_cast<Impl*>(self);
        try {
            impl->eval(time, state, out);
            return GSL_SUCCESS;
        } catch (...) {
            impl->pending = std::current_exception();
            return GSL_EBADFUNC;
        }
    }

    static int gsl_jacobian(double time, const double state[], double* dfdy, double dfdt[], void* self) {
        auto* impl = static_cast<Impl*>(self);
        try {
            impl->jacobian(time, state, dfdy);
            std::fill(dfdt, dfdt + impl->dim, 0.0);
            return GSL_SUCCESS;
        } catch (...) {
            impl->pending = std::current_exception();
            return GSL_EBADFUNC;
        }
    }

    void jacobian(double time, const double* state, double* dfdy) {
        const std::size_t n = dim;
        eval(time, state, f0.data());
        std::copy(state, state + n, y_pert.begin());
        const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
        for (std::size_t j = 0; j < n; ++j) {
            const double yj = state[j];
            y_pert[j] = yj + sqrt_eps * std::max(std::abs(yj), 1.0);
            const double dh = y_pert[j] - yj;
            eval(time, y_pert.data(), f_pert.data());
            for (std::size_t i = 0; i < n; ++i) dfdy[i * n + j] = (f_pert[i] - f0[i]) / dh;
            y_pert[j] = yj;
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "integrator " << what << " at t=" << t << " d";
        throw SolverError(os.str(), t, y);
    }
};

StiffIntegrator::StiffIntegrator(std::size_t dimension, Rhs rhs, IntegratorOptions options) {
    options.validate();
    impl_ = std::make_unique<Impl>(dimension, std::move(rhs), options);
}

StiffIntegrator::~StiffIntegrator() = default;
StiffIntegrator::StiffIntegrator(StiffIntegrator&&) noexcept = default;
StiffIntegrator& StiffIntegrator::operator=(StiffIntegrator&&) noexcept = default;

void StiffIntegrator::initialize(double t0, std::span<const double> y0) {
    auto& m = *impl_;
    if (y0.size() != m.dim) throw ConfigError("integrator: initial state has wrong dimension");
    for (double v : y0)
        if (!std::isfinite(v)) throw SolverError("integrator: non-finite initial state", t0, {y0.begin(), y0.end()});
    std::copy(y0.begin(), y0.end(), m.y.begin());
    m.t = t0;
    m.h = m.options.initial_step;
    m.step_count = 0;
    gsl_odeiv2_step_reset(m.stepper);
    gsl_odeiv2_evolve_reset(m.evolve);
}

void StiffIntegrator::step(double t_limit) {
    auto& m = *impl_;
    if (!(t_limit > m.t)) return;
    if (m.options.max_step > 0.0) m.h = std::min(m.h, m.options.max_step);
    const double t_before = m.t;
    const int status = gsl_odeiv2_evolve_apply(m.evolve, m.control, m.stepper, &m.sys, &m.t, t_limit, &m.h, m.y.data());
    if (m.pending) {
        auto e = std::exchange(m.pending, nullptr);
        try {
            std::rethrow_exception(e);
        } catch (const SolverError&) {
            throw;
        } catch (const std::exception& ex) {
            m.fail(std::string("right-hand side failed: ") + ex.what());
        }
    }
    if (status != GSL_SUCCESS) m.fail(std::string("step failed (") + gsl_strerror(status) + ")");
    if (!(m.t > t_before)) m.fail("step size collapsed");
    for (double v : m.y)
        if (!std::isfinite(v)) m.fail("produced a non-finite state");
    ++m.step_count;
}

void StiffIntegrator::advance_to(double t) {
    while (impl_->t < t) step(t);
}

double StiffIntegrator::time() const { return impl_->t; }
std::span<const double> StiffIntegrator::state() const { return impl_->y; }
std::size_t StiffIntegrator::steps() const { return impl_->step_count; }
std::size_t StiffIntegrator::rhs_evaluations() const { return impl_->rhs_calls; }

}  // namespace asmbench::flowsheet
