#pragma once

#include "asmbench/core/components.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace asmbench::kinetics {

using core::ComponentSet;
using core::Conserved;

/// Rate of one process, g/m3/d in the basis of its reference component.
using RateLaw = std::function<double(std::span<const double> state)>;

/// Stoichiometric coefficient; std::nullopt marks a coefficient to be completed by conservation.
using Coefficient = std::optional<double>;
inline constexpr std::nullopt_t kUnknown = std::nullopt;

struct KineticProcess {
    std::string id;
    /// Aligned to the component set; absent components carry 0.
    std::vector<Coefficient> stoichiometry;
    RateLaw rate_law;
    std::set<Conserved> conserved_for;

    std::size_t unknown_count() const;
    bool resolved() const { return unknown_count() == 0; }
    /// Resolved coefficient; throws if still unknown.
    double coefficient(std::size_t i) const;
};

using ConservationWeights = std::map<Conserved, std::vector<double>>;

/// Solve each UNKNOWN coefficient so the declared conserved quantities balance.
/// Throws ConfigError when the count of unknowns differs from the count of equations or
/// the induced system is singular (pivot below 1e-12).
KineticProcess complete_stoichiometry(const KineticProcess& process, const ConservationWeights& weights);

/// Sum_i nu_i * w_i for one process; zero means the quantity is conserved.
double conservation_residual(const KineticProcess& process, std::span<const double> weights);

/// Fully resolved stoichiometry paired with rate laws.
class GujerMatrix {
public:
    GujerMatrix(std::shared_ptr<const ComponentSet> components, std::vector<KineticProcess> processes);

    const ComponentSet& components() const noexcept { return *components_; }
    std::size_t process_count() const noexcept { return processes_.size(); }
    std::size_t component_count() const noexcept { return components_->size(); }
    const KineticProcess& process(std::size_t j) const { return processes_.at(j); }
    double nu(std::size_t process, std::size_t component) const {
        return nu_[process * component_count() + component];
    }

    /// Process rates; negative state entries are read as zero.
    void rates(std::span<const double> state, std::span<double> rho) const;
    std::vector<double> rates(std::span<const double> state) const;

    /// r = nu^T rho for a given rate vector.
    void apply(std::span<const double> rho, std::span<double> r) const;

    /// Production rate of every component, accumulated into r (r is overwritten).
    void production_rates(std::span<const double> state, std::span<double> r) const;
    std::vector<double> production_rates(std::span<const double> state) const;

    double residual(std::size_t process, std::span<const double> weights) const;

private:
    std::shared_ptr<const ComponentSet> components_;
    std::vector<KineticProcess> processes_;
    std::vector<double> nu_;
};

}  // namespace asmbench::kinetics
