#pragma once

#include "asmbench/core/stream.hpp"
#include "asmbench/units/unit.hpp"

#include <optional>
#include <string>
#include <vector>

namespace asmbench::flowsheet {

enum class Mode { dynamic, equilibrium, mixed };

/// A directed stream edge. A stream without producer is a boundary influent; one without
/// consumer is a boundary product.
struct StreamEdge {
    std::string name;
    std::optional<std::size_t> producer;
    std::size_t producer_outlet = 0;
    std::optional<std::size_t> consumer;
    std::optional<core::WasteStream> influent;  // set for boundary influents
};

/// Flowsheet wiring: units in registration order plus stream edges, recycles allowed.
class SystemGraph {
public:
    explicit SystemGraph(std::shared_ptr<const core::ComponentSet> components);

    std::size_t add_unit(units::UnitPtr unit, std::vector<double> initial_state = {});
    std::size_t add_influent(std::string name, core::WasteStream stream, std::size_t consumer);
    std::size_t connect(std::string name, std::size_t producer, std::size_t outlet, std::size_t consumer);
    std::size_t add_product(std::string name, std::size_t producer, std::size_t outlet);

    void set_initial_state(std::size_t unit, std::vector<double> state);

    const core::ComponentSet& components() const noexcept { return *components_; }
    const std::shared_ptr<const core::ComponentSet>& component_set() const noexcept { return components_; }
    const std::vector<units::UnitPtr>& units() const noexcept { return units_; }
    const std::vector<StreamEdge>& streams() const noexcept { return streams_; }
    const std::vector<double>& initial_state(std::size_t unit) const { return initial_.at(unit); }

    std::size_t unit_index(std::string_view id) const;
    std::size_t stream_index(std::string_view name) const;
    const units::Unit& unit(std::string_view id) const { return *units_[unit_index(id)]; }

    /// Streams consumed by a unit, in registration order.
    std::vector<std::size_t> inlets_of(std::size_t unit) const;
    /// Stream on each outlet of a unit.
    std::vector<std::size_t> outlets_of(std::size_t unit) const;

    Mode mode() const;

    /// Throws ConfigError on dangling outlets, doubly-connected outlets, or units without inlets.
    void validate() const;

    /// Units ordered breadth-first from the boundary influents; ties by registration index.
    std::vector<std::size_t> topological_order() const;

private:
    std::shared_ptr<const core::ComponentSet> components_;
    std::vector<units::UnitPtr> units_;
    std::vector<std::vector<double>> initial_;
    std::vector<StreamEdge> streams_;
};

/// Steady flows of every stream (constant-volume units, linear outlet rules).
std::vector<double> solve_flows(const SystemGraph& graph);

}  // namespace asmbench::flowsheet
