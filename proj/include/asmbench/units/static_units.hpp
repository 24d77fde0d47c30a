#pragma once

#include "asmbench/core/stream.hpp"
#include "asmbench/units/unit.hpp"

#include <map>

namespace asmbench::units {

/// Single outlet carrying the flow-weighted mix of all inlets.
class Mixer final : public Unit {
public:
    using Unit::Unit;
    std::size_t outlet_count() const override { return 1; }
    OutletRule outlet_rule(std::size_t) const override { return OutletRule::remainder(); }
    bool outlets_need_feed() const override { return true; }
    void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const override;
};

/// Divides the mixed inflow among outlets at identical concentrations. Each outlet takes a
/// fraction of the inflow, a fixed flow, or the remainder.
class Splitter final : public Unit {
public:
    Splitter(std::string id, std::vector<OutletRule> rules);
    /// Pure fraction splitter; fractions must sum to 1 within 1e-9.
    static Splitter fractions(std::string id, std::vector<double> fractions);

    std::size_t outlet_count() const override { return rules_.size(); }
    OutletRule outlet_rule(std::size_t k) const override { return rules_.at(k); }
    bool outlets_need_feed() const override { return true; }
    void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const override;

private:
    std::vector<OutletRule> rules_;
};

/// Fractional conversion of one reactant into products, on the stated basis per unit reactant.
struct Conversion {
    std::size_t reactant = 0;
    double conversion = 0.0;                  // in [0, 1]
    std::map<std::size_t, double> products;   // component -> amount per unit reactant converted
};

/// Equilibrium-mode reactor defined by fixed conversions; reactions apply in sequence.
class ConversionReactor final : public Unit {
public:
    ConversionReactor(std::string id, std::vector<Conversion> reactions, std::size_t component_count);

    const std::vector<Conversion>& reactions() const noexcept { return reactions_; }
    std::size_t outlet_count() const override { return 1; }
    OutletRule outlet_rule(std::size_t) const override { return OutletRule::remainder(); }
    bool outlets_need_feed() const override { return true; }
    void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const override;

private:
    std::vector<Conversion> reactions_;
};

/// Outlet flows of a unit for a given total inflow; throws on negative results.
std::vector<double> outlet_flows(const Unit& unit, double inflow);

/// Evaluates a static unit on explicit inlet streams.
std::vector<core::WasteStream> static_convert(const Unit& unit, std::span<const core::WasteStream> inlets);

}  // namespace asmbench::units
