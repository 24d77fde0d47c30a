#include "asmbench/core/components.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <set>

namespace asmbench::core {

std::string_view to_string(Basis b) {
    switch (b) {
    case Basis::COD: return "g-COD/m3";
    case Basis::N: return "g-N/m3";
    case Basis::O2: return "g-O2/m3";
    case Basis::mol: return "mol/m3";
    }
    return "?";
}

std::string_view to_string(Conserved c) {
    switch (c) {
    case Conserved::COD: return "COD";
    case Conserved::N: return "N";
    case Conserved::charge: return "charge";
    }
    return "?";
}

double Component::weight(Conserved c) const {
    auto it = content.find(c);
    return it == content.end() ? 0.0 : it->second;
}

ComponentSet::ComponentSet(std::vector<Component> components) : components_(std::move(components)) {
    std::set<std::string> seen;
    for (const auto& c : components_) {
        if (c.id.empty()) throw ConfigError("component with empty id");
        if (!seen.insert(c.id).second) throw ConfigError("duplicate component id '" + c.id + "'");
        for (const auto& [q, w] : c.content) {
            if (!std::isfinite(w))
                throw ConfigError("component '" + c.id + "' has non-finite " + std::string(to_string(q)) +
                                  " weight");
        }
    }
}

std::optional<std::size_t> ComponentSet::find(std::string_view id) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i].id == id) return i;
    return std::nullopt;
}

std::size_t ComponentSet::index_of(std::string_view id) const {
    if (auto i = find(id)) return *i;
    throw ConfigError("unknown component '" + std::string(id) + "'");
}

std::vector<std::string> ComponentSet::ids() const {
    std::vector<std::string> out;
    out.reserve(components_.size());
    for (const auto& c : components_) out.push_back(c.id);
    return out;
}

std::vector<double> ComponentSet::weights(Conserved c) const {
    std::vector<double> w;
    w.reserve(components_.size());
    for (const auto& comp : components_) w.push_back(comp.weight(c));
    return w;
}

std::vector<std::size_t> ComponentSet::soluble_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (!components_[i].particulate()) out.push_back(i);
    return out;
}

std::vector<std::size_t> ComponentSet::particulate_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (components_[i].particulate()) out.push_back(i);
    return out;
}

bool ComponentSet::same_schema(const ComponentSet& other) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
        if (components_[i].id != other.components_[i].id) return false;
    return true;
}

ComponentSet ComponentSet::asm1(double i_XB, double i_XP) {
    using enum Conserved;
    constexpr double kN = asm1::kReducedNitrogenCOD;
    constexpr double kCharge = 1.0 / 14.0;  // mol charge per g-N
    // COD weights are oxygen-demand equivalents with N2 as the nitrogen reference, so
    // organically bound and ammonium nitrogen carry 1.71 g-O2/g-N on top of carbon COD.
    auto organic = [&](std::string id, std::string desc, PhaseClass ph, double n) {
        return Component{std::move(id), std::move(desc), Basis::COD, ph,
                         {{COD, 1.0 + kN * n}, {N, n}}};
    };
    std::vector<Component> c;
    c.push_back(organic("S_I", "Soluble inert organic matter", PhaseClass::soluble, 0.0));
    c.push_back(organic("S_S", "Readily biodegradable substrate", PhaseClass::soluble, 0.0));
    c.push_back(organic("X_I", "Particulate inert organic matter", PhaseClass::particulate, i_XP));
    c.push_back(organic("X_S", "Slowly biodegradable substrate", PhaseClass::particulate, 0.0));
    c.push_back(organic("X_BH", "Active heterotrophic biomass", PhaseClass::particulate, i_XB));
    c.push_back(organic("X_BA", "Active autotrophic biomass", PhaseClass::particulate, i_XB));
    c.push_back(organic("X_P", "Particulate products arising from biomass decay", PhaseClass::particulate, i_XP));
    c.push_back({"S_O", "Dissolved oxygen", Basis::O2, PhaseClass::soluble, {{COD, -1.0}}});
    c.push_back({"S_NO", "Nitrate and nitrite nitrogen", Basis::N, PhaseClass::soluble,
                 {{COD, asm1::kNitrateCOD}, {N, 1.0}, {charge, -kCharge}}});
    c.push_back({"S_NH", "Ammonium nitrogen", Basis::N, PhaseClass::soluble,
                 {{COD, kN}, {N, 1.0}, {charge, kCharge}}});
    c.push_back({"S_ND", "Soluble biodegradable organic nitrogen", Basis::N, PhaseClass::soluble,
                 {{COD, kN}, {N, 1.0}}});
    c.push_back({"X_ND", "Particulate biodegradable organic nitrogen", Basis::N, PhaseClass::particulate,
                 {{COD, kN}, {N, 1.0}}});
    c.push_back({"S_ALK", "Alkalinity, as bicarbonate", Basis::mol, PhaseClass::soluble, {{charge, -1.0}}});
    return ComponentSet(std::move(c));
}

}  // namespace asmbench::core
