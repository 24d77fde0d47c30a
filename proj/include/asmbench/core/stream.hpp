#pragma once

#include "asmbench/core/components.hpp"

#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace asmbench::core {

/// Concentrations below this are integrator round-off and are clamped to zero.
inline constexpr double kNegativeTolerance = 1e-9;

/// Clamp round-off negatives to zero; throws ConfigError on anything more negative.
void clamp_round_off(std::span<double> conc, std::string_view where);

class WasteStream {
public:
    WasteStream(std::shared_ptr<const ComponentSet> components, std::vector<double> concentrations,
                double flow, double temperature = 293.15, double pressure = 101325.0);

    /// All-zero stream on the given schema.
    static WasteStream empty(std::shared_ptr<const ComponentSet> components, double flow = 0.0);

    const ComponentSet& components() const noexcept { return *components_; }
    const std::shared_ptr<const ComponentSet>& component_set() const noexcept { return components_; }
    std::span<const double> concentrations() const noexcept { return conc_; }
    double concentration(std::size_t i) const { return conc_.at(i); }
    double concentration(std::string_view id) const { return conc_[components_->index_of(id)]; }
    double flow() const noexcept { return flow_; }          // m3/d
    double temperature() const noexcept { return temperature_; }  // K
    double pressure() const noexcept { return pressure_; }  // Pa

    WasteStream with_flow(double flow) const;

private:
    std::shared_ptr<const ComponentSet> components_;
    std::vector<double> conc_;
    double flow_;
    double temperature_;
    double pressure_;
};

/// Flow-weighted mixing; flows add, concentrations and temperature are flow-weighted means.
WasteStream mix(std::span<const WasteStream> streams);

/// Component mass flow in kg/d.
double mass_flow(const WasteStream& s, std::size_t component);
double mass_flow(const WasteStream& s, std::string_view component);

/// Shared default ASM1 schema at baseline nitrogen contents.
std::shared_ptr<const ComponentSet> default_asm1_components();

}  // namespace asmbench::core
