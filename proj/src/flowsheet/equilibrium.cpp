#include "asmbench/flowsheet/equilibrium.hpp"

#include "asmbench/core/errors.hpp"
#include "asmbench/units/static_units.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace asmbench::flowsheet {

namespace {

double relative_change(double before, double after) {
    const double scale = std::max(std::abs(before), std::abs(after));
    return scale > 0.0 ? std::abs(after - before) / scale : 0.0;
}

// Largest relative change in flow, or in any component mass flow relative to the stream's
// largest component mass flow.
double stream_change(const core::WasteStream& before, const core::WasteStream& after) {
    double worst = relative_change(before.flow(), after.flow());
    const auto cb = before.concentrations();
    const auto ca = after.concentrations();
    double scale = 0.0;
    for (std::size_t i = 0; i < ca.size(); ++i)
        scale = std::max({scale, std::abs(cb[i] * before.flow()), std::abs(ca[i] * after.flow())});
    if (scale == 0.0) return worst;
    for (std::size_t i = 0; i < ca.size(); ++i)
        worst = std::max(worst, std::abs(ca[i] * after.flow() - cb[i] * before.flow()) / scale);
    return worst;
}

// Finds one cycle among the internal streams not yet torn; returns its streams, or nothing.
std::vector<std::size_t> find_cycle(const SystemGraph& graph, const std::vector<bool>& torn) {
    const auto& streams = graph.streams();
    const std::size_t nu = graph.units().size();
    std::vector<std::vector<std::size_t>> out(nu);
    for (std::size_t s = 0; s < streams.size(); ++s)
        if (streams[s].producer && streams[s].consumer && !torn[s]) out[*streams[s].producer].push_back(s);

    enum { white, grey, black };
    std::vector<int> colour(nu, white);
    std::vector<std::size_t> path;  // streams along the current DFS path
    std::vector<std::size_t> cycle;
    std::function<bool(std::size_t)> visit = [&](std::size_t u) {
        colour[u] = grey;
        for (auto s : out[u]) {
            const auto v = *streams[s].consumer;
            if (colour[v] == grey) {
                // walk back along the path to v
                cycle.push_back(s);
                for (auto it = path.rbegin(); it != path.rend(); ++it) {
                    if (*streams[*it].consumer == v) break;
                    cycle.push_back(*it);
                }
                return true;
            }
            if (colour[v] == white) {
                path.push_back(s);
                if (visit(v)) return true;
                path.pop_back();
            }
        }
        colour[u] = black;
        return false;
    };
    for (std::size_t u = 0; u < nu; ++u)
        if (colour[u] == white && visit(u)) return cycle;
    return {};
}

// Kahn order over the untorn internal streams, smallest registration index first.
std::vector<std::size_t> evaluation_order(const SystemGraph& graph, const std::vector<bool>& torn) {
    const auto& streams = graph.streams();
    const std::size_t nu = graph.units().size();
    std::vector<std::size_t> indegree(nu, 0);
    for (std::size_t s = 0; s < streams.size(); ++s)
        if (streams[s].producer && streams[s].consumer && !torn[s]) ++indegree[*streams[s].consumer];
    std::set<std::size_t> ready;
    for (std::size_t u = 0; u < nu; ++u)
        if (indegree[u] == 0) ready.insert(u);
    std::vector<std::size_t> order;
    while (!ready.empty()) {
        const auto u = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(u);
        for (std::size_t s = 0; s < streams.size(); ++s)
            if (streams[s].producer == u && streams[s].consumer && !torn[s] && --indegree[*streams[s].consumer] == 0)
                ready.insert(*streams[s].consumer);
    }
    return order;
}

}  // namespace

EquilibriumResult converge_equilibrium(const SystemGraph& graph, const EquilibriumOptions& options) {
    graph.validate();
    if (!(options.rtol > 0.0)) throw ConfigError("converge_equilibrium: rtol must be > 0");
    if (options.max_iterations == 0) throw ConfigError("converge_equilibrium: max_iterations must be >= 1");
    const auto& units = graph.units();
    const auto& streams = graph.streams();
    for (const auto& u : units)
        if (u->dynamic()) throw ConfigError("converge_equilibrium: unit '" + u->id() + "' is dynamic");

    EquilibriumResult result;
    std::vector<bool> torn(streams.size(), false);
    for (auto cycle = find_cycle(graph, torn); !cycle.empty(); cycle = find_cycle(graph, torn))
        torn[*std::min_element(cycle.begin(), cycle.end())] = true;
    for (std::size_t s = 0; s < streams.size(); ++s)
        if (torn[s]) result.tear_streams.push_back(s);
    const auto order = evaluation_order(graph, torn);

    const auto cmps = graph.component_set();
    result.streams.reserve(streams.size());
    for (std::size_t s = 0; s < streams.size(); ++s) {
        const auto& e = streams[s];
        if (e.influent)
            result.streams.push_back(*e.influent);
        else
            result.streams.push_back(core::WasteStream::empty(cmps));
    }

    std::vector<std::vector<std::size_t>> inlets(units.size()), outlets(units.size());
    for (std::size_t u = 0; u < units.size(); ++u) {
        inlets[u] = graph.inlets_of(u);
        outlets[u] = graph.outlets_of(u);
    }

    std::vector<core::WasteStream> feed;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        double change = 0.0;
        for (auto u : order) {
            feed.clear();
            for (auto s : inlets[u]) feed.push_back(result.streams[s]);
            auto out = units::static_convert(*units[u], feed);
            for (std::size_t k = 0; k < out.size(); ++k) {
                auto& slot = result.streams[outlets[u][k]];
                change = std::max(change, stream_change(slot, out[k]));
                slot = std::move(out[k]);
            }
        }
        result.iterations = it;
        if (result.tear_streams.empty() || change <= options.rtol) return result;
    }
    std::ostringstream os;
    os << "converge_equilibrium: recycle did not converge within " << options.max_iterations << " iterations";
    throw ConvergenceError(os.str());
}

}  // namespace asmbench::flowsheet
