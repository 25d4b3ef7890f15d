#pragma once

// Abstracting-path replay: a trace is contained in the abstraction if the
// path graph can consume it label by label starting from a generation-0
// vertex (tau delays make the frontier alignment free, so only edge
// existence matters).

#include <string>
#include <vector>

#include "dcs/abstraction.hpp"

namespace dcs::test {

inline bool replayable(const ControlProblem& problem, const AbstractionResult& abstraction,
                       const std::vector<std::string>& trace) {
    const SyncIndex& index = problem.index();
    std::vector<char> current(index.total_states(), 0);
    for (VertexId v = 0; v < static_cast<VertexId>(abstraction.generation.size()); ++v)
        if (abstraction.generation[v] == 0)
            current[v] = 1;
    for (const std::string& text : trace) {
        LabelId label = index.label_id(Label::parse(text));
        if (label < 0)
            return false;
        std::vector<char> next(index.total_states(), 0);
        bool any = false;
        for (const AbstractionEdge& e : abstraction.edges) {
            if (e.label == label && current[e.source]) {
                next[e.target] = 1;
                any = true;
            }
        }
        if (!any)
            return false;
        current = std::move(next);
    }
    return true;
}

} // namespace dcs::test
