#include "asmbench/core/stream.hpp"

#include "asmbench/core/errors.hpp"

#include <cmath>
#include <sstream>

namespace asmbench::core {

void clamp_round_off(std::span<double> conc, std::string_view where) {
    for (std::size_t i = 0; i < conc.size(); ++i) {
        if (conc[i] >= 0.0) continue;
        if (conc[i] < -kNegativeTolerance || std::isnan(conc[i])) {
            std::ostringstream os;
            os << where << ": concentration index " << i << " is " << conc[i] << " (below -"
               << kNegativeTolerance << ")";
            throw ConfigError(os.str());
        }
        conc[i] = 0.0;
    }
}

WasteStream::WasteStream(std::shared_ptr<const ComponentSet> components, std::vector<double> concentrations,
                         double flow, double temperature, double pressure)
    : components_(std::move(components)), conc_(std::move(concentrations)), flow_(flow),
      temperature_(temperature), pressure_(pressure) {
    if (!components_) throw ConfigError("waste stream without component set");
    if (conc_.size() != components_->size())
        throw ConfigError("waste stream has " + std::to_string(conc_.size()) + " concentrations for " +
                          std::to_string(components_->size()) + " components");
    if (!(flow_ >= 0.0) || !std::isfinite(flow_)) throw ConfigError("waste stream flow must be finite and >= 0");
    clamp_round_off(conc_, "waste stream");
}

WasteStream WasteStream::empty(std::shared_ptr<const ComponentSet> components, double flow) {
    const auto n = components->size();
    return WasteStream(std::move(components), std::vector<double>(n, 0.0), flow);
}

WasteStream WasteStream::with_flow(double flow) const {
    return WasteStream(components_, conc_, flow, temperature_, pressure_);
}

WasteStream mix(std::span<const WasteStream> streams) {
    if (streams.empty()) throw ConfigError("mix: no streams");
    const auto& schema = streams.front().component_set();
    const std::size_t n = schema->size();
    double q = 0.0;
    for (const auto& s : streams) {
        if (s.component_set() != schema && !s.components().same_schema(*schema))
            throw ConfigError("mix: streams on different component sets");
        q += s.flow();
    }
    if (streams.size() == 1) return streams.front();
    std::vector<double> c(n, 0.0);
    double temp = 0.0;
    double pres = 0.0;
    if (q > 0.0) {
        for (const auto& s : streams) {
            const double w = s.flow() / q;
            for (std::size_t i = 0; i < n; ++i) c[i] += w * s.concentrations()[i];
            temp += w * s.temperature();
            pres += w * s.pressure();
        }
    } else {
        // Zero total flow: plain average keeps the result well-defined.
        const double w = 1.0 / static_cast<double>(streams.size());
        for (const auto& s : streams) {
            for (std::size_t i = 0; i < n; ++i) c[i] += w * s.concentrations()[i];
            temp += w * s.temperature();
            pres += w * s.pressure();
        }
    }
    return WasteStream(schema, std::move(c), q, temp, pres);
}

double mass_flow(const WasteStream& s, std::size_t component) {
    return s.concentration(component) * s.flow() / 1000.0;
}

double mass_flow(const WasteStream& s, std::string_view component) {
    return mass_flow(s, s.components().index_of(component));
}

std::shared_ptr<const ComponentSet> default_asm1_components() {
    static const auto set = std::make_shared<const ComponentSet>(ComponentSet::asm1());
    return set;
}

}  // namespace asmbench::core
