#include "dcs/compose.hpp"

#include <unordered_map>

#include "dcs/error.hpp"

namespace dcs {

void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw CapacityError("timeout");
}

StateId Composition::find(const CompositeState& cs) const {
    for (size_t i = 0; i < states.size(); ++i)
        if (states[i] == cs)
            return static_cast<StateId>(i);
    return kNoState;
}

Composition compose_full(const SyncIndex& index, size_t cap, const Deadline& deadline) {
    Composition out;
    out.lts.name = "composition";
    out.lts.alphabet = index.alphabet();

    std::unordered_map<CompositeState, StateId, CompositeStateHash> ids;
    std::vector<std::pair<LabelId, CompositeState>> succs;

    CompositeState initial = index.initial_state();
    ids.emplace(initial, 0);
    out.states.push_back(initial);
    out.lts.states.emplace_back();

    for (size_t head = 0; head < out.states.size(); ++head) {
        if ((head & 0x3ff) == 0)
            check_deadline(deadline);
        CompositeState cs = out.states[head]; // copy: out.states may reallocate
        index.enabled(cs, succs);
        std::vector<LtsTransition> row;
        row.reserve(succs.size());
        for (auto& [label, succ] : succs) {
            auto [it, fresh] = ids.try_emplace(succ, static_cast<StateId>(out.states.size()));
            if (fresh) {
                if (out.states.size() >= cap)
                    throw CapacityError("state-space too large (over " + std::to_string(cap) +
                                        " reachable product states)");
                out.states.push_back(std::move(succ));
                out.lts.states.emplace_back();
            }
            row.push_back({label, it->second});
        }
        out.lts.states[head] = std::move(row);
    }
    out.lts.initial = 0;
    return out;
}

Composition compose_full(const ControlProblem& problem, size_t cap, const Deadline& deadline) {
    return compose_full(problem.index(), cap, deadline);
}

} // namespace dcs
