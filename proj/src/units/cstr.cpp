#include "asmbench/units/cstr.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>

namespace asmbench::units {

void Unit::derivative(std::span<const double>, const Feed&, std::span<double> dstate) const {
    for (auto& d : dstate) d = 0.0;
}

CSTR::CSTR(std::string id, double volume, std::shared_ptr<const core::ComponentSet> components,
           std::shared_ptr<const kinetics::GujerMatrix> kinetics, std::optional<kinetics::AerationProcess> aeration,
           std::size_t oxygen_index)
    : Unit(std::move(id)), volume_(volume), components_(std::move(components)), kinetics_(std::move(kinetics)),
      aeration_(aeration), oxygen_index_(oxygen_index) {
    if (!(volume_ > 0.0) || !std::isfinite(volume_)) throw ConfigError("CSTR '" + this->id() + "': volume must be > 0");
    if (!components_) throw ConfigError("CSTR '" + this->id() + "': no component set");
    if (kinetics_ && kinetics_->component_count() != components_->size())
        throw ConfigError("CSTR '" + this->id() + "': kinetics not aligned to component set");
    if (aeration_) {
        aeration_->validate();
        if (oxygen_index_ >= components_->size()) throw ConfigError("CSTR '" + this->id() + "': bad oxygen index");
    }
}

void CSTR::outlets(std::span<const double> state, const Feed&, std::span<const std::span<double>> out) const {
    std::copy(state.begin(), state.end(), out[0].begin());
}

void CSTR::derivative(std::span<const double> state, const Feed& feed, std::span<double> dstate) const {
    const std::size_t n = state.size();
    if (kinetics_) {
        kinetics_->production_rates(state, dstate);
    } else {
        for (auto& d : dstate) d = 0.0;
    }
    const double dilution = feed.flow / volume_;
    for (std::size_t i = 0; i < n; ++i) dstate[i] += dilution * (feed.conc[i] - state[i]);
    if (aeration_) dstate[oxygen_index_] += aeration_->rate(state[oxygen_index_]);
}

std::vector<double> cstr_derivative(const CSTR& unit, const core::WasteStream& inflow, std::span<const double> state) {
    if (state.size() != unit.state_size() || inflow.components().size() != unit.state_size())
        throw ConfigError("cstr_derivative: dimension mismatch");
    const double q = inflow.flow();
    Feed feed{q, inflow.concentrations(), std::span<const double>(&q, 1)};
    std::vector<double> d(state.size());
    unit.derivative(state, feed, d);
    return d;
}

}  // namespace asmbench::units
