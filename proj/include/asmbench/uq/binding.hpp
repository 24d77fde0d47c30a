#pragma once

#include "asmbench/flowsheet/bsm1.hpp"
#include "asmbench/uq/distributions.hpp"

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace asmbench::uq {

/// Metrics of one model evaluation; on failure `metrics` is all NaN and `error` says why.
struct Evaluation {
    std::vector<double> metrics;
    bool ok = false;
    std::string error;
};

/// Uncertain parameters, metric names, and a thread-safe evaluator. The evaluator takes
/// one value per parameter (in order) and returns one value per metric; it signals a
/// failed evaluation with ConfigError, SolverError, or ConvergenceError.
struct ModelBinding {
    std::vector<DistributionSpec> parameters;
    std::vector<std::string> metrics;
    std::function<std::vector<double>(std::span<const double>)> evaluate;

    void validate() const;
    std::size_t parameter_index(std::string_view name) const;
    std::vector<std::string> parameter_names() const;

    Evaluation try_evaluate(std::span<const double> x) const;
};

/// 0 means one worker per hardware thread.
unsigned resolve_workers(unsigned requested);

/// Evaluates every row of X on up to `workers` threads. Results are in row order and do
/// not depend on the worker count.
std::vector<Evaluation> evaluate_rows(const ModelBinding& binding, const Eigen::MatrixXd& X, unsigned workers = 0);

/// Everything a BSM1 steady-state evaluation depends on.
struct BSM1Scenario {
    flowsheet::BSM1Settings settings;
    kinetics::ASM1ParameterSet asm1;
    flowsheet::SteadyOptions steady;

    /// Sets a BSM1 setting or an ASM1 parameter by name; ConfigError if neither.
    void set(std::string_view name, double value);
    double get(std::string_view name) const;
};

struct BSM1Result {
    flowsheet::SteadyState steady;
    flowsheet::EffluentMetrics metrics;
};

/// Builds, converges, and measures one scenario.
BSM1Result run_bsm1(const BSM1Scenario& scenario);

/// The 28 uncertain BSM1 parameters: the 20 ASM1 parameters (triangular, mode at the
/// baseline) and DO_sat plus seven design and operating variables (uniform, baseline taken
/// from the settings). RAS and internal-recycle ranges scale with Q_in.
std::vector<DistributionSpec> bsm1_parameter_specs(const flowsheet::BSM1Settings& settings = {});

/// Binding whose metrics are the seven effluent metrics of a converged steady state.
ModelBinding bsm1_binding(BSM1Scenario base, std::vector<DistributionSpec> parameters);
inline ModelBinding bsm1_binding(BSM1Scenario base = {}) {
    auto specs = bsm1_parameter_specs(base.settings);
    return bsm1_binding(std::move(base), std::move(specs));
}

}  // namespace asmbench::uq
