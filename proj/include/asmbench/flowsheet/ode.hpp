#pragma once

#include "asmbench/flowsheet/system.hpp"

#include <span>
#include <string>
#include <vector>

namespace asmbench::flowsheet {

/// System-wide ODE compiled from a SystemGraph. Stream concentrations are resolved
/// algebraically from the current state on every evaluation; flows are fixed at compile time.
/// Holds a private workspace, so one instance belongs to one run.
class SystemOde {
public:
    explicit SystemOde(SystemGraph graph);

    const SystemGraph& graph() const noexcept { return graph_; }
    std::size_t dimension() const noexcept { return dimension_; }

    /// Offset of a dynamic unit's block in the global state, npos for static units.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t offset(std::size_t unit) const { return offset_.at(unit); }
    std::size_t offset(std::string_view unit_id) const { return offset(graph_.unit_index(unit_id)); }
    /// Dynamic units in packing order.
    const std::vector<std::size_t>& packing() const noexcept { return packing_; }

    std::vector<double> initial_state() const;
    std::vector<std::string> state_labels() const;  // "<unit>.<label>" in packing order

    const std::vector<double>& flows() const noexcept { return flows_; }
    double flow(std::string_view stream) const { return flows_[graph_.stream_index(stream)]; }

    void derivative(double t, std::span<const double> y, std::span<double> dydt);
    std::vector<double> derivative(std::span<const double> y);

    /// Concentrations of every stream at state y (streams x components, row-major).
    const std::vector<double>& resolve_streams(std::span<const double> y);
    core::WasteStream stream(std::string_view name, std::span<const double> y);

    /// Mixed feed concentrations of a unit at state y.
    std::vector<double> feed(std::size_t unit, std::span<const double> y);

    /// Copy of one dynamic unit's state block.
    std::vector<double> unit_block(std::size_t unit, std::span<const double> y) const;

private:
    void evaluate_outlets(std::span<const double> y);
    void mix_feed(std::size_t unit);
    std::span<const double> block(std::size_t unit, std::span<const double> y) const;

    SystemGraph graph_;
    std::size_t n_comp_;
    std::size_t dimension_ = 0;
    std::vector<std::size_t> offset_;
    std::vector<std::size_t> packing_;
    std::vector<double> flows_;
    std::vector<std::vector<std::size_t>> inlets_;
    std::vector<std::vector<std::size_t>> outlets_;
    std::vector<double> unit_inflow_;
    std::vector<std::vector<double>> unit_outlet_flows_;
    std::vector<std::size_t> state_only_;   // dynamic units whose outlets depend only on state
    std::vector<std::size_t> feed_order_;   // remaining units in dependency order
    // workspace
    std::vector<double> stream_conc_;
    std::vector<std::vector<double>> feed_conc_;
    std::vector<std::vector<std::span<double>>> outlet_views_;
};

}  // namespace asmbench::flowsheet
