#include "asmbench/kinetics/process.hpp"

#include "asmbench/core/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace asmbench::kinetics {

namespace {
constexpr double kPivotThreshold = 1e-12;
}

std::size_t KineticProcess::unknown_count() const {
    return static_cast<std::size_t>(
        std::count_if(stoichiometry.begin(), stoichiometry.end(), [](const Coefficient& c) { return !c; }));
}

double KineticProcess::coefficient(std::size_t i) const {
    const auto& c = stoichiometry.at(i);
    if (!c) throw ConfigError("process '" + id + "': coefficient " + std::to_string(i) + " is unresolved");
    return *c;
}

KineticProcess complete_stoichiometry(const KineticProcess& process, const ConservationWeights& weights) {
    std::vector<std::size_t> unknown;
    for (std::size_t i = 0; i < process.stoichiometry.size(); ++i)
        if (!process.stoichiometry[i]) unknown.push_back(i);

    const std::vector<Conserved> eqs(process.conserved_for.begin(), process.conserved_for.end());
    if (unknown.size() != eqs.size())
        throw ConfigError("process '" + process.id + "': " + std::to_string(unknown.size()) +
                          " unknown coefficients but " + std::to_string(eqs.size()) +
                          " conservation equations");
    if (unknown.empty()) return process;

    const auto n = static_cast<Eigen::Index>(unknown.size());
    Eigen::MatrixXd a(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index e = 0; e < n; ++e) {
        auto it = weights.find(eqs[static_cast<std::size_t>(e)]);
        if (it == weights.end())
            throw ConfigError("process '" + process.id + "': no weights for conserved quantity " +
                              std::string(core::to_string(eqs[static_cast<std::size_t>(e)])));
        const auto& w = it->second;
        if (w.size() != process.stoichiometry.size())
            throw ConfigError("process '" + process.id + "': weight vector size mismatch");
        double known = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i)
            if (process.stoichiometry[i]) known += *process.stoichiometry[i] * w[i];
        b(e) = -known;
        for (Eigen::Index u = 0; u < n; ++u) a(e, u) = w[unknown[static_cast<std::size_t>(u)]];
    }

    Eigen::VectorXd x(n);
    if (n == 1) {
        if (std::abs(a(0, 0)) < kPivotThreshold)
            throw ConfigError("process '" + process.id + "': unknown coefficient has zero weight in its equation");
        x(0) = b(0) / a(0, 0);
    } else {
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        lu.setThreshold(kPivotThreshold);
        if (lu.rank() < n) throw ConfigError("process '" + process.id + "': singular conservation system");
        x = lu.solve(b);
    }

    KineticProcess out = process;
    for (std::size_t u = 0; u < unknown.size(); ++u) out.stoichiometry[unknown[u]] = x(static_cast<Eigen::Index>(u));
    return out;
}

double conservation_residual(const KineticProcess& process, std::span<const double> weights) {
    if (weights.size() != process.stoichiometry.size())
        throw ConfigError("conservation_residual: weight vector size mismatch");
    double r = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) r += process.coefficient(i) * weights[i];
    return r;
}

GujerMatrix::GujerMatrix(std::shared_ptr<const ComponentSet> components, std::vector<KineticProcess> processes)
    : components_(std::move(components)), processes_(std::move(processes)) {
    const std::size_t n = components_->size();
    nu_.assign(processes_.size() * n, 0.0);
    for (std::size_t j = 0; j < processes_.size(); ++j) {
        const auto& p = processes_[j];
        if (p.stoichiometry.size() != n)
            throw ConfigError("process '" + p.id + "' is not aligned to the component set");
        if (!p.rate_law) throw ConfigError("process '" + p.id + "' has no rate law");
        for (std::size_t i = 0; i < n; ++i) nu_[j * n + i] = p.coefficient(i);
    }
}

void GujerMatrix::rates(std::span<const double> state, std::span<double> rho) const {
    if (state.size() != component_count() || rho.size() != process_count())
        throw ConfigError("GujerMatrix::rates: dimension mismatch");
    // Rate laws are defined on the non-negative orthant.
    double clamped[64];
    std::vector<double> heap;
    std::span<double> c;
    if (state.size() <= std::size(clamped)) {
        c = std::span<double>(clamped, state.size());
    } else {
        heap.resize(state.size());
        c = heap;
    }
    for (std::size_t i = 0; i < state.size(); ++i) c[i] = state[i] > 0.0 ? state[i] : 0.0;
    for (std::size_t j = 0; j < processes_.size(); ++j) rho[j] = processes_[j].rate_law(c);
}

std::vector<double> GujerMatrix::rates(std::span<const double> state) const {
    std::vector<double> rho(process_count());
    rates(state, rho);
    return rho;
}

void GujerMatrix::apply(std::span<const double> rho, std::span<double> r) const {
    const std::size_t n = component_count();
    if (rho.size() != process_count() || r.size() != n)
        throw ConfigError("GujerMatrix::apply: dimension mismatch");
    std::fill(r.begin(), r.end(), 0.0);
    for (std::size_t j = 0; j < rho.size(); ++j) {
        const double rj = rho[j];
        if (rj == 0.0) continue;
        const double* row = &nu_[j * n];
        for (std::size_t i = 0; i < n; ++i) r[i] += row[i] * rj;
    }
}

void GujerMatrix::production_rates(std::span<const double> state, std::span<double> r) const {
    double rho_buf[64];
    std::vector<double> heap;
    std::span<double> rho;
    if (process_count() <= std::size(rho_buf)) {
        rho = std::span<double>(rho_buf, process_count());
    } else {
        heap.resize(process_count());
        rho = heap;
    }
    rates(state, rho);
    apply(rho, r);
}

std::vector<double> GujerMatrix::production_rates(std::span<const double> state) const {
    std::vector<double> r(component_count());
    production_rates(state, r);
    return r;
}

double GujerMatrix::residual(std::size_t process, std::span<const double> weights) const {
    const std::size_t n = component_count();
    if (weights.size() != n) throw ConfigError("GujerMatrix::residual: weight vector size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += nu(process, i) * weights[i];
    return s;
}

}  // namespace asmbench::kinetics
