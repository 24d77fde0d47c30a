#include "asmbench/units/static_units.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <numeric>

namespace asmbench::units {

void Mixer::outlets(std::span<const double>, const Feed& feed, std::span<const std::span<double>> out) const {
    std::copy(feed.conc.begin(), feed.conc.end(), out[0].begin());
}

Splitter::Splitter(std::string id, std::vector<OutletRule> rules) : Unit(std::move(id)), rules_(std::move(rules)) {
    if (rules_.empty()) throw ConfigError("splitter '" + this->id() + "': no outlets");
    int remainders = 0;
    bool all_fractions = true;
    double fsum = 0.0;
    for (const auto& r : rules_) {
        if (!(r.value >= 0.0) || !std::isfinite(r.value))
            throw ConfigError("splitter '" + this->id() + "': outlet rule values must be finite and >= 0");
        if (r.kind == OutletRule::Kind::remainder) ++remainders;
        if (r.kind == OutletRule::Kind::fraction)
            fsum += r.value;
        else
            all_fractions = false;
    }
    if (remainders > 1) throw ConfigError("splitter '" + this->id() + "': at most one remainder outlet");
    if (all_fractions && std::abs(fsum - 1.0) > 1e-9)
        throw ConfigError("splitter '" + this->id() + "': split fractions must sum to 1");
    if (fsum > 1.0 + 1e-9) throw ConfigError("splitter '" + this->id() + "': split fractions exceed 1");
}

Splitter Splitter::fractions(std::string id, std::vector<double> fractions) {
    std::vector<OutletRule> rules;
    rules.reserve(fractions.size());
    for (double f : fractions) rules.push_back(OutletRule::fraction(f));
    return Splitter(std::move(id), std::move(rules));
}

void Splitter::outlets(std::span<const double>, const Feed& feed, std::span<const std::span<double>> out) const {
    for (auto& o : out) std::copy(feed.conc.begin(), feed.conc.end(), o.begin());
}

ConversionReactor::ConversionReactor(std::string id, std::vector<Conversion> reactions, std::size_t component_count)
    : Unit(std::move(id)), reactions_(std::move(reactions)) {
    for (const auto& r : reactions_) {
        if (!(r.conversion >= 0.0 && r.conversion <= 1.0))
            throw ConfigError("conversion reactor '" + this->id() + "': conversion must lie in [0, 1]");
        if (r.reactant >= component_count)
            throw ConfigError("conversion reactor '" + this->id() + "': reactant index out of range");
        for (const auto& [idx, yield] : r.products) {
            if (idx >= component_count || !std::isfinite(yield))
                throw ConfigError("conversion reactor '" + this->id() + "': invalid product entry");
        }
    }
}

void ConversionReactor::outlets(std::span<const double>, const Feed& feed, std::span<const std::span<double>> out) const {
    auto c = out[0];
    std::copy(feed.conc.begin(), feed.conc.end(), c.begin());
    for (const auto& r : reactions_) {
        const double converted = c[r.reactant] * r.conversion;
        if (converted == 0.0) continue;
        c[r.reactant] -= converted;
        for (const auto& [idx, yield] : r.products) c[idx] += yield * converted;
    }
}

std::vector<double> outlet_flows(const Unit& unit, double inflow) {
    const std::size_t n = unit.outlet_count();
    std::vector<double> q(n, 0.0);
    std::ptrdiff_t remainder = -1;
    double assigned = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const auto rule = unit.outlet_rule(k);
        switch (rule.kind) {
        case OutletRule::Kind::fraction: q[k] = rule.value * inflow; break;
        case OutletRule::Kind::fixed: q[k] = rule.value; break;
        case OutletRule::Kind::remainder: remainder = static_cast<std::ptrdiff_t>(k); continue;
        }
        assigned += q[k];
    }
    if (remainder >= 0) q[static_cast<std::size_t>(remainder)] = inflow - assigned;
    for (double v : q)
        if (v < -1e-9 * std::max(1.0, inflow))
            throw ConfigError("unit '" + unit.id() + "': outlet flows exceed the inflow");
    return q;
}

std::vector<core::WasteStream> static_convert(const Unit& unit, std::span<const core::WasteStream> inlets) {
    if (unit.dynamic()) throw ConfigError("static_convert: unit '" + unit.id() + "' is dynamic");
    const auto mixed = core::mix(inlets);
    const auto flows = outlet_flows(unit, mixed.flow());
    const std::size_t n = mixed.components().size();
    std::vector<std::vector<double>> conc(unit.outlet_count(), std::vector<double>(n));
    std::vector<std::span<double>> views(conc.begin(), conc.end());
    Feed feed{mixed.flow(), mixed.concentrations(), flows};
    unit.outlets({}, feed, views);
    std::vector<core::WasteStream> out;
    out.reserve(conc.size());
    for (std::size_t k = 0; k < conc.size(); ++k)
        out.emplace_back(mixed.component_set(), std::move(conc[k]), std::max(0.0, flows[k]), mixed.temperature(),
                         mixed.pressure());
    return out;
}

}  // namespace asmbench::units
