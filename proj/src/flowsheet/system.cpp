#include "asmbench/flowsheet/system.hpp"

#include "asmbench/core/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>

namespace asmbench::flowsheet {

SystemGraph::SystemGraph(std::shared_ptr<const core::ComponentSet> components) : components_(std::move(components)) {
    if (!components_) throw ConfigError("system graph without component set");
}

std::size_t SystemGraph::add_unit(units::UnitPtr unit, std::vector<double> initial_state) {
    if (!unit) throw ConfigError("add_unit: null unit");
    for (const auto& u : units_)
        if (u->id() == unit->id()) throw ConfigError("duplicate unit id '" + unit->id() + "'");
    if (initial_state.empty()) initial_state.assign(unit->state_size(), 0.0);
    if (initial_state.size() != unit->state_size())
        throw ConfigError("unit '" + unit->id() + "': initial state has wrong size");
    units_.push_back(std::move(unit));
    initial_.push_back(std::move(initial_state));
    return units_.size() - 1;
}

void SystemGraph::set_initial_state(std::size_t unit, std::vector<double> state) {
    if (state.size() != units_.at(unit)->state_size())
        throw ConfigError("unit '" + units_[unit]->id() + "': initial state has wrong size");
    initial_[unit] = std::move(state);
}

std::size_t SystemGraph::add_influent(std::string name, core::WasteStream stream, std::size_t consumer) {
    if (consumer >= units_.size()) throw ConfigError("add_influent: unknown consumer");
    if (!stream.components().same_schema(*components_))
        throw ConfigError("influent '" + name + "' is on a different component set");
    streams_.push_back({std::move(name), std::nullopt, 0, consumer, std::move(stream)});
    return streams_.size() - 1;
}

std::size_t SystemGraph::connect(std::string name, std::size_t producer, std::size_t outlet, std::size_t consumer) {
    if (producer >= units_.size() || consumer >= units_.size()) throw ConfigError("connect: unknown unit");
    if (outlet >= units_[producer]->outlet_count())
        throw ConfigError("connect: unit '" + units_[producer]->id() + "' has no outlet " + std::to_string(outlet));
    streams_.push_back({std::move(name), producer, outlet, consumer, std::nullopt});
    return streams_.size() - 1;
}

std::size_t SystemGraph::add_product(std::string name, std::size_t producer, std::size_t outlet) {
    if (producer >= units_.size()) throw ConfigError("add_product: unknown unit");
    if (outlet >= units_[producer]->outlet_count())
        throw ConfigError("add_product: unit '" + units_[producer]->id() + "' has no outlet " + std::to_string(outlet));
    streams_.push_back({std::move(name), producer, outlet, std::nullopt, std::nullopt});
    return streams_.size() - 1;
}

std::size_t SystemGraph::unit_index(std::string_view id) const {
    for (std::size_t i = 0; i < units_.size(); ++i)
        if (units_[i]->id() == id) return i;
    throw ConfigError("unknown unit '" + std::string(id) + "'");
}

std::size_t SystemGraph::stream_index(std::string_view name) const {
    for (std::size_t i = 0; i < streams_.size(); ++i)
        if (streams_[i].name == name) return i;
    throw ConfigError("unknown stream '" + std::string(name) + "'");
}

std::vector<std::size_t> SystemGraph::inlets_of(std::size_t unit) const {
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < streams_.size(); ++s)
        if (streams_[s].consumer == unit) out.push_back(s);
    return out;
}

std::vector<std::size_t> SystemGraph::outlets_of(std::size_t unit) const {
    std::vector<std::size_t> out(units_.at(unit)->outlet_count(), streams_.size());
    for (std::size_t s = 0; s < streams_.size(); ++s)
        if (streams_[s].producer == unit) out[streams_[s].producer_outlet] = s;
    return out;
}

Mode SystemGraph::mode() const {
    bool any_dynamic = false;
    bool any_static = false;
    for (const auto& u : units_) (u->dynamic() ? any_dynamic : any_static) = true;
    if (any_dynamic && any_static) return Mode::mixed;
    return any_dynamic ? Mode::dynamic : Mode::equilibrium;
}

void SystemGraph::validate() const {
    std::vector<std::vector<int>> used(units_.size());
    for (std::size_t u = 0; u < units_.size(); ++u) used[u].assign(units_[u]->outlet_count(), 0);
    std::vector<int> inlet_count(units_.size(), 0);
    for (const auto& s : streams_) {
        if (s.producer) ++used[*s.producer][s.producer_outlet];
        if (s.consumer) ++inlet_count[*s.consumer];
        if (!s.producer && !s.consumer) throw ConfigError("stream '" + s.name + "' is connected to nothing");
    }
    for (std::size_t u = 0; u < units_.size(); ++u) {
        for (std::size_t k = 0; k < used[u].size(); ++k) {
            if (used[u][k] == 0)
                throw ConfigError("dangling outlet " + std::to_string(k) + " of unit '" + units_[u]->id() + "'");
            if (used[u][k] > 1)
                throw ConfigError("outlet " + std::to_string(k) + " of unit '" + units_[u]->id() +
                                  "' feeds more than one stream");
        }
        if (inlet_count[u] == 0) throw ConfigError("unit '" + units_[u]->id() + "' has no inlet");
    }
}

std::vector<std::size_t> SystemGraph::topological_order() const {
    std::vector<std::size_t> order;
    std::vector<bool> seen(units_.size(), false);
    std::deque<std::size_t> queue;
    for (const auto& s : streams_) {
        if (!s.producer && s.consumer && !seen[*s.consumer]) {
            seen[*s.consumer] = true;
            queue.push_back(*s.consumer);
        }
    }
    auto drain = [&] {
        while (!queue.empty()) {
            const auto u = queue.front();
            queue.pop_front();
            order.push_back(u);
            std::vector<std::size_t> next;
            for (const auto& s : streams_)
                if (s.producer == u && s.consumer && !seen[*s.consumer]) next.push_back(*s.consumer);
            std::sort(next.begin(), next.end());
            next.erase(std::unique(next.begin(), next.end()), next.end());
            for (auto v : next) {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    };
    drain();
    for (std::size_t u = 0; u < units_.size(); ++u) {
        if (!seen[u]) {
            seen[u] = true;
            queue.push_back(u);
            drain();
        }
    }
    return order;
}

std::vector<double> solve_flows(const SystemGraph& graph) {
    const auto& streams = graph.streams();
    const auto& units = graph.units();
    const auto n = static_cast<Eigen::Index>(streams.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);

    std::vector<std::vector<std::size_t>> inlets(units.size()), outlets(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
        inlets[u] = graph.inlets_of(u);
        outlets[u] = graph.outlets_of(u);
    }

    for (Eigen::Index row = 0; row < n; ++row) {
        const auto& s = streams[static_cast<std::size_t>(row)];
        a(row, row) = 1.0;
        if (!s.producer) {
            b(row) = s.influent ? s.influent->flow() : 0.0;
            continue;
        }
        const auto u = *s.producer;
        const auto rule = units[u]->outlet_rule(s.producer_outlet);
        switch (rule.kind) {
        case units::OutletRule::Kind::fixed:
            b(row) = rule.value;
            break;
        case units::OutletRule::Kind::fraction:
            for (auto in : inlets[u]) a(row, static_cast<Eigen::Index>(in)) -= rule.value;
            break;
        case units::OutletRule::Kind::remainder:
            for (auto in : inlets[u]) a(row, static_cast<Eigen::Index>(in)) -= 1.0;
            for (auto out : outlets[u])
                if (out != static_cast<std::size_t>(row) && out < streams.size())
                    a(row, static_cast<Eigen::Index>(out)) += 1.0;
            break;
        }
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() < n) throw ConfigError("flow network is singular (closed loop without a boundary outlet?)");
    const Eigen::VectorXd q = lu.solve(b);

    std::vector<double> flows(streams.size());
    double scale = 1.0;
    for (Eigen::Index i = 0; i < n; ++i) scale = std::max(scale, std::abs(q(i)));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double v = q(i);
        if (!std::isfinite(v) || v < -1e-9 * scale)
            throw ConfigError("inconsistent flows: stream '" + streams[static_cast<std::size_t>(i)].name +
                              "' would carry " + std::to_string(v) + " m3/d");
        flows[static_cast<std::size_t>(i)] = std::max(0.0, v);
    }
    return flows;
}

}  // namespace asmbench::flowsheet
