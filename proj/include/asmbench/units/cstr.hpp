#pragma once

#include "asmbench/core/stream.hpp"
#include "asmbench/kinetics/asm1.hpp"
#include "asmbench/units/unit.hpp"

#include <optional>

namespace asmbench::units {

/// Constant-volume continuous stirred tank; outlet flow equals total inflow.
class CSTR final : public Unit {
public:
    CSTR(std::string id, double volume, std::shared_ptr<const core::ComponentSet> components,
         std::shared_ptr<const kinetics::GujerMatrix> kinetics = nullptr,
         std::optional<kinetics::AerationProcess> aeration = std::nullopt, std::size_t oxygen_index = core::asm1::S_O);

    double volume() const noexcept { return volume_; }
    const kinetics::GujerMatrix* kinetics() const noexcept { return kinetics_.get(); }
    const std::optional<kinetics::AerationProcess>& aeration() const noexcept { return aeration_; }

    std::size_t outlet_count() const override { return 1; }
    OutletRule outlet_rule(std::size_t) const override { return OutletRule::remainder(); }
    std::size_t state_size() const override { return components_->size(); }
    std::vector<std::string> state_labels() const override { return components_->ids(); }
    bool outlets_need_feed() const override { return false; }
    void outlets(std::span<const double> state, const Feed& feed, std::span<const std::span<double>> out) const override;
    void derivative(std::span<const double> state, const Feed& feed, std::span<double> dstate) const override;

private:
    double volume_;
    std::shared_ptr<const core::ComponentSet> components_;
    std::shared_ptr<const kinetics::GujerMatrix> kinetics_;
    std::optional<kinetics::AerationProcess> aeration_;
    std::size_t oxygen_index_;
};

/// dC/dt = (Q/V)(C_in - C) + r(C) [+ K_La (DO_sat - S_O) on S_O].
std::vector<double> cstr_derivative(const CSTR& unit, const core::WasteStream& inflow, std::span<const double> state);

}  // namespace asmbench::units
