#include "asmbench/flowsheet/ode.hpp"

#include "asmbench/core/errors.hpp"

#include <algorithm>

namespace asmbench::flowsheet {

SystemOde::SystemOde(SystemGraph graph) : graph_(std::move(graph)), n_comp_(graph_.components().size()) {
    graph_.validate();
    const auto& units = graph_.units();
    const auto& streams = graph_.streams();
    const std::size_t nu = units.size();

    flows_ = solve_flows(graph_);

    inlets_.resize(nu);
    outlets_.resize(nu);
    unit_inflow_.assign(nu, 0.0);
    unit_outlet_flows_.resize(nu);
    for (std::size_t u = 0; u < nu; ++u) {
        inlets_[u] = graph_.inlets_of(u);
        outlets_[u] = graph_.outlets_of(u);
        for (auto s : inlets_[u]) unit_inflow_[u] += flows_[s];
        for (auto s : outlets_[u]) unit_outlet_flows_[u].push_back(flows_[s]);
    }

    offset_.assign(nu, npos);
    for (auto u : graph_.topological_order()) {
        if (!units[u]->dynamic()) continue;
        offset_[u] = dimension_;
        dimension_ += units[u]->state_size();
        packing_.push_back(u);
    }

    // Outlet evaluation order: state-determined units first, then feed-dependent units once
    // every inlet stream is known.
    std::vector<bool> known(streams.size(), false);
    for (std::size_t s = 0; s < streams.size(); ++s)
        if (!streams[s].producer) known[s] = true;
    std::vector<bool> done(nu, false);
    for (std::size_t u = 0; u < nu; ++u) {
        if (!units[u]->outlets_need_feed()) {
            state_only_.push_back(u);
            done[u] = true;
            for (auto s : outlets_[u]) known[s] = true;
        }
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t u = 0; u < nu; ++u) {
            if (done[u]) continue;
            const bool ready = std::all_of(inlets_[u].begin(), inlets_[u].end(), [&](std::size_t s) { return known[s]; });
            if (!ready) continue;
            feed_order_.push_back(u);
            done[u] = true;
            for (auto s : outlets_[u]) known[s] = true;
            progress = true;
        }
    }
    for (std::size_t u = 0; u < nu; ++u)
        if (!done[u])
            throw ConfigError("algebraic loop through unit '" + units[u]->id() +
                              "': every recycle needs a unit whose outlets depend only on its state");

    stream_conc_.assign(streams.size() * n_comp_, 0.0);
    for (std::size_t s = 0; s < streams.size(); ++s) {
        if (streams[s].influent) {
            const auto c = streams[s].influent->concentrations();
            std::copy(c.begin(), c.end(), stream_conc_.begin() + static_cast<std::ptrdiff_t>(s * n_comp_));
        }
    }
    feed_conc_.assign(nu, std::vector<double>(n_comp_, 0.0));
    outlet_views_.resize(nu);
    for (std::size_t u = 0; u < nu; ++u)
        for (auto s : outlets_[u]) outlet_views_[u].emplace_back(stream_conc_.data() + s * n_comp_, n_comp_);
}

std::vector<double> SystemOde::initial_state() const {
    std::vector<double> y(dimension_);
    for (auto u : packing_) {
        const auto& init = graph_.initial_state(u);
        std::copy(init.begin(), init.end(), y.begin() + static_cast<std::ptrdiff_t>(offset_[u]));
    }
    return y;
}

std::vector<std::string> SystemOde::state_labels() const {
    std::vector<std::string> out;
    out.reserve(dimension_);
    for (auto u : packing_) {
        const auto& unit = *graph_.units()[u];
        for (const auto& l : unit.state_labels()) out.push_back(unit.id() + "." + l);
    }
    return out;
}

std::span<const double> SystemOde::block(std::size_t unit, std::span<const double> y) const {
    if (offset_[unit] == npos) return {};
    return y.subspan(offset_[unit], graph_.units()[unit]->state_size());
}

std::vector<double> SystemOde::unit_block(std::size_t unit, std::span<const double> y) const {
    const auto b = block(unit, y);
    return {b.begin(), b.end()};
}

void SystemOde::mix_feed(std::size_t u) {
    auto& c = feed_conc_[u];
    std::fill(c.begin(), c.end(), 0.0);
    const double q = unit_inflow_[u];
    if (q <= 0.0) return;
    for (auto s : inlets_[u]) {
        const double w = flows_[s] / q;
        if (w == 0.0) continue;
        const double* src = stream_conc_.data() + s * n_comp_;
        for (std::size_t i = 0; i < n_comp_; ++i) c[i] += w * src[i];
    }
}

void SystemOde::evaluate_outlets(std::span<const double> y) {
    const auto& units = graph_.units();
    for (auto u : state_only_) {
        units::Feed feed{unit_inflow_[u], feed_conc_[u], unit_outlet_flows_[u]};
        units[u]->outlets(block(u, y), feed, outlet_views_[u]);
    }
    for (auto u : feed_order_) {
        mix_feed(u);
        units::Feed feed{unit_inflow_[u], feed_conc_[u], unit_outlet_flows_[u]};
        units[u]->outlets(block(u, y), feed, outlet_views_[u]);
    }
}

void SystemOde::derivative(double, std::span<const double> y, std::span<double> dydt) {
    if (y.size() != dimension_ || dydt.size() != dimension_) throw ConfigError("SystemOde: dimension mismatch");
    evaluate_outlets(y);
    const auto& units = graph_.units();
    for (auto u : packing_) {
        if (!units[u]->outlets_need_feed()) mix_feed(u);
        units::Feed feed{unit_inflow_[u], feed_conc_[u], unit_outlet_flows_[u]};
        units[u]->derivative(block(u, y), feed, dydt.subspan(offset_[u], units[u]->state_size()));
    }
}

std::vector<double> SystemOde::derivative(std::span<const double> y) {
    std::vector<double> d(dimension_);
    derivative(0.0, y, d);
    return d;
}

const std::vector<double>& SystemOde::resolve_streams(std::span<const double> y) {
    if (y.size() != dimension_) throw ConfigError("SystemOde: dimension mismatch");
    evaluate_outlets(y);
    return stream_conc_;
}

core::WasteStream SystemOde::stream(std::string_view name, std::span<const double> y) {
    const auto s = graph_.stream_index(name);
    resolve_streams(y);
    std::vector<double> c(stream_conc_.begin() + static_cast<std::ptrdiff_t>(s * n_comp_),
                          stream_conc_.begin() + static_cast<std::ptrdiff_t>((s + 1) * n_comp_));
    for (auto& v : c)
        if (v < 0.0 && v >= -core::kNegativeTolerance) v = 0.0;
    return core::WasteStream(graph_.component_set(), std::move(c), flows_[s]);
}

std::vector<double> SystemOde::feed(std::size_t unit, std::span<const double> y) {
    resolve_streams(y);
    mix_feed(unit);
    return feed_conc_.at(unit);
}

}  // namespace asmbench::flowsheet
