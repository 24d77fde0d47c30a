#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace asmbench::units {

/// How the flow of one outlet follows from the unit's total inflow.
struct OutletRule {
    enum class Kind { fraction, fixed, remainder };
    Kind kind = Kind::remainder;
    double value = 0.0;

    static OutletRule fraction(double f) { return {Kind::fraction, f}; }
    static OutletRule fixed(double q) { return {Kind::fixed, q}; }
    static OutletRule remainder() { return {Kind::remainder, 0.0}; }
};

/// The mixed inlet of a unit plus its resolved outlet flows.
struct Feed {
    double flow = 0.0;                   // m3/d
    std::span<const double> conc;        // aligned to the component set
    std::span<const double> outlet_flows;
};

/// A unit operation. Definitions are immutable; per-run state lives in the caller's state vector.
class Unit {
public:
    explicit Unit(std::string id) : id_(std::move(id)) {}
    virtual ~Unit() = default;

    const std::string& id() const noexcept { return id_; }

    virtual std::size_t outlet_count() const = 0;
    virtual OutletRule outlet_rule(std::size_t outlet) const = 0;

    virtual std::size_t state_size() const { return 0; }
    virtual std::vector<std::string> state_labels() const { return {}; }
    bool dynamic() const { return state_size() > 0; }

    /// True when outlet concentrations depend on the instantaneous feed, not just on state.
    virtual bool outlets_need_feed() const = 0;

    /// Writes outlet concentrations; out[k] has one entry per component.
    virtual void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const = 0;

    virtual void derivative(std::span<const double> state, const Feed& feed, std::span<double> dstate) const;

private:
    std::string id_;
};

using UnitPtr = std::shared_ptr<const Unit>;

}  // namespace asmbench::units
