#pragma once

#include "asmbench/flowsheet/system.hpp"

namespace asmbench::flowsheet {

struct EquilibriumOptions {
    double rtol = 1e-8;
    std::size_t max_iterations = 200;
};

struct EquilibriumResult {
    std::vector<core::WasteStream> streams;  // indexed like graph.streams()
    std::vector<std::size_t> tear_streams;   // streams closing a cycle
    std::size_t iterations = 0;

    const core::WasteStream& stream(const SystemGraph& graph, std::string_view name) const {
        return streams.at(graph.stream_index(name));
    }
};

/// Sequential-modular solution of a flowsheet of static units. Each cycle is torn at its
/// stream with the smallest registration index; torn streams start empty. Units run in
/// topological order of the remaining graph (ties by registration index) and the loop
/// repeats by successive substitution until every flow and component mass flow changes by
/// at most rtol relative. Throws ConvergenceError past max_iterations.
EquilibriumResult converge_equilibrium(const SystemGraph& graph, const EquilibriumOptions& options = {});

}  // namespace asmbench::flowsheet
