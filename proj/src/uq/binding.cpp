#include "asmbench/uq/binding.hpp"

#include "asmbench/core/errors.hpp"
#include "asmbench/uq/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

namespace asmbench::uq {

void ModelBinding::validate() const {
    validate_specs(parameters);
    if (metrics.empty()) throw ConfigError("model binding has no metrics");
    if (!evaluate) throw ConfigError("model binding has no evaluator");
}

std::size_t ModelBinding::parameter_index(std::string_view name) const {
    for (std::size_t j = 0; j < parameters.size(); ++j)
        if (parameters[j].name == name) return j;
    throw ConfigError("model binding has no parameter '" + std::string(name) + "'");
}

std::vector<std::string> ModelBinding::parameter_names() const {
    std::vector<std::string> out;
    for (const auto& p : parameters) out.push_back(p.name);
    return out;
}

Evaluation ModelBinding::try_evaluate(std::span<const double> x) const {
    Evaluation e;
    try {
        e.metrics = evaluate(x);
        if (e.metrics.size() != metrics.size()) throw ConfigError("evaluator returned the wrong number of metrics");
        e.ok = true;
    } catch (const ConfigError& ex) {
        e.error = ex.what();
    } catch (const SolverError& ex) {
        e.error = ex.what();
    } catch (const ConvergenceError& ex) {
        e.error = ex.what();
    }
    if (!e.ok) e.metrics.assign(metrics.size(), std::numeric_limits<double>::quiet_NaN());
    return e;
}

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Evaluation> evaluate_rows(const ModelBinding& binding, const Eigen::MatrixXd& X, unsigned workers) {
    if (static_cast<std::size_t>(X.cols()) != binding.parameters.size())
        throw ConfigError("sample matrix columns do not match the binding's parameters");
    const auto n = static_cast<std::size_t>(X.rows());
    std::vector<Evaluation> out(n);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        std::vector<double> x(static_cast<std::size_t>(X.cols()));
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            for (std::size_t j = 0; j < x.size(); ++j) x[j] = X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            out[i] = binding.try_evaluate(x);
        }
    };
    const unsigned w = std::min<std::size_t>(resolve_workers(workers), std::max<std::size_t>(n, 1));
    if (w <= 1) {
        work();
        return out;
    }
    std::vector<std::exception_ptr> errors(w);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&, t] {
            try {
                work();
            } catch (...) {
                errors[t] = std::current_exception();
                next.store(n);
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

void BSM1Scenario::set(std::string_view name, double value) {
    const auto& asm1_names = kinetics::ASM1ParameterSet::names();
    if (std::find(asm1_names.begin(), asm1_names.end(), name) != asm1_names.end()) {
        asm1.at(name) = value;
        return;
    }
    settings.at(name) = value;
}

double BSM1Scenario::get(std::string_view name) const {
    const auto& asm1_names = kinetics::ASM1ParameterSet::names();
    if (std::find(asm1_names.begin(), asm1_names.end(), name) != asm1_names.end()) return asm1.at(name);
    return settings.at(name);
}

BSM1Result run_bsm1(const BSM1Scenario& scenario) {
    flowsheet::SystemOde ode(flowsheet::build_bsm1(scenario.settings, scenario.asm1));
    BSM1Result r;
    r.steady = flowsheet::steady_state(ode, ode.initial_state(), scenario.steady);
    r.metrics = flowsheet::effluent_metrics(ode, r.steady, scenario.asm1.composite_params(), scenario.steady.tol_ss);
    return r;
}

std::vector<DistributionSpec> bsm1_parameter_specs(const flowsheet::BSM1Settings& s) {
    using D = DistributionSpec;
    const double q = s.Q_in;
    return {
        D::triangular("Y_H", 0.64, 0.67, 0.70),
        D::triangular("Y_A", 0.23, 0.24, 0.25),
        D::triangular("f_Pobs", 0.16, 0.21, 0.26),
        D::triangular("i_XB", 0.04, 0.08, 0.12),
        D::triangular("i_XP", 0.057, 0.06, 0.063),
        D::triangular("f_SS_COD", 0.7, 0.75, 0.95),
        D::triangular("mu_H", 3.0, 4.0, 5.0),
        D::triangular("K_S", 5.0, 10.0, 15.0),
        D::triangular("K_OH", 0.1, 0.2, 0.3),
        D::triangular("K_NO", 0.25, 0.5, 0.75),
        D::triangular("b_H", 0.285, 0.3, 0.315),
        D::triangular("mu_A", 0.475, 0.5, 0.525),
        D::triangular("K_NH", 0.5, 1.0, 1.5),
        D::triangular("K_OA", 0.3, 0.4, 0.5),
        D::triangular("b_A", 0.04, 0.05, 0.06),
        D::triangular("eta_g", 0.6, 0.8, 1.0),
        D::triangular("k_a", 0.03, 0.05, 0.08),
        D::triangular("k_h", 2.25, 3.0, 3.75),
        D::triangular("K_X", 0.075, 0.1, 0.125),
        D::triangular("eta_h", 0.6, 0.8, 1.0),
        D::uniform("DO_sat", 7.2, 8.8, s.DO_sat),
        D::uniform("V_a", 900.0, 1000.0, s.V_a),
        D::uniform("V_o", 1200.0, 1333.0, s.V_o),
        D::uniform("K_La1", 180.0, 360.0, s.K_La1),
        D::uniform("K_La2", 75.6, 92.4, s.K_La2),
        D::uniform("Q_RAS", 0.75 * q, q, s.Q_RAS),
        D::uniform("Q_WAS", 346.5, 423.5, s.Q_WAS),
        D::uniform("Q_intr", 2.25 * q, 3.75 * q, s.Q_intr),
    };
}

ModelBinding bsm1_binding(BSM1Scenario base, std::vector<DistributionSpec> parameters) {
    ModelBinding b;
    b.parameters = std::move(parameters);
    for (auto n : flowsheet::EffluentMetrics::names()) b.metrics.emplace_back(n);
    validate_specs(b.parameters);
    for (const auto& p : b.parameters) (void)base.get(p.name);  // every name must resolve
    b.evaluate = [base = std::move(base), names = b.parameter_names()](std::span<const double> x) {
        auto sc = base;
        for (std::size_t j = 0; j < names.size(); ++j) sc.set(names[j], x[j]);
        const auto v = run_bsm1(sc).metrics.values();
        return std::vector<double>(v.begin(), v.end());
    };
    return b;
}

}  // namespace asmbench::uq
