#include "dcs/oracle.hpp"

#include <algorithm>
#include <unordered_map>

#include "dcs/error.hpp"

namespace dcs {

size_t GameSolution::winning_count() const {
    return static_cast<size_t>(std::count(winning.begin(), winning.end(), 1));
}

GameSolution solve_monolithic(const ControlProblem& problem, size_t cap,
                              const Deadline& deadline) {
    GameSolution sol{compose_full(problem, cap, deadline), {}, {}, false};
    const Lts& product = sol.product.lts;
    const size_t n = product.n_states();
    sol.winning.assign(n, 0);
    sol.witness.assign(n, -1);

    // Least fixpoint by backward propagation. Uncontrollable states track
    // how many uncontrollable non-reach successors still have to join the
    // winning set; controllable states join when one usable successor
    // does. Mixed states follow the uncontrollable rule: their
    // controllable transitions are ignored.
    std::vector<int32_t> need(n, 0);
    std::vector<char> dead(n, 0); // uncontrollable avoid action enabled
    std::vector<char> has_unc(n, 0);
    std::vector<std::vector<std::pair<StateId, LabelId>>> incoming(n); // relevant edges only

    std::vector<StateId> work;
    auto mark_winning = [&](StateId s) {
        if (!sol.winning[s]) {
            sol.winning[s] = 1;
            work.push_back(s);
        }
    };

    for (size_t s = 0; s < n; ++s) {
        const auto& row = product.states[s];
        for (const LtsTransition& t : row)
            if (!problem.is_controllable(t.label))
                has_unc[s] = 1;
        if (row.empty())
            continue; // deadlocks lose
        if (has_unc[s]) {
            for (const LtsTransition& t : row) {
                if (problem.is_controllable(t.label))
                    continue;
                if (problem.is_avoid(t.label)) {
                    dead[s] = 1;
                } else if (!problem.is_reach(t.label)) {
                    need[s]++;
                    incoming[t.target].emplace_back(static_cast<StateId>(s), t.label);
                }
            }
            if (!dead[s] && need[s] == 0)
                mark_winning(static_cast<StateId>(s));
        } else {
            bool instant = false;
            for (const LtsTransition& t : row) {
                if (problem.is_avoid(t.label))
                    continue;
                if (problem.is_reach(t.label))
                    instant = true;
                else
                    incoming[t.target].emplace_back(static_cast<StateId>(s), t.label);
            }
            if (instant)
                mark_winning(static_cast<StateId>(s));
        }
    }

    while (!work.empty()) {
        StateId t = work.back();
        work.pop_back();
        for (auto [s, label] : incoming[t]) {
            if (sol.winning[s] || dead[s])
                continue;
            if (has_unc[s]) {
                if (--need[s] == 0)
                    mark_winning(s);
            } else {
                mark_winning(s);
            }
        }
    }

    // Witness action for winning controllable states: the first usable
    // transition in canonical order.
    for (size_t s = 0; s < n; ++s) {
        if (!sol.winning[s] || has_unc[s])
            continue;
        for (const LtsTransition& t : product.states[s]) {
            if (problem.is_avoid(t.label))
                continue;
            if (problem.is_reach(t.label) || sol.winning[t.target]) {
                sol.witness[s] = t.label;
                break;
            }
        }
    }

    sol.initial_winning = sol.winning[product.initial] != 0;
    return sol;
}

const char* to_string(Violation::Kind k) {
    switch (k) {
    case Violation::Kind::Avoid: return "avoid";
    case Violation::Kind::Discharge: return "discharge";
    case Violation::Kind::Blocking: return "blocking";
    }
    return "?";
}

namespace {

struct ClosedLoopState {
    CompositeState env;
    StateId ctrl;

    bool operator==(const ClosedLoopState& o) const { return ctrl == o.ctrl && env == o.env; }
};

struct ClosedLoopHash {
    size_t operator()(const ClosedLoopState& s) const {
        return CompositeStateHash{}(s.env) * 31 + static_cast<size_t>(s.ctrl);
    }
};

} // namespace

VerificationReport verify_controller(const ControlProblem& problem, const Lts& controller,
                                     size_t cap) {
    validate(controller);
    const SyncIndex& index = problem.index();

    // Map global label ids to the controller's alphabet (or -1 when the
    // controller does not constrain the label).
    std::vector<int32_t> ctrl_local(index.n_labels(), -1);
    for (const Label& l : controller.alphabet) {
        LabelId g = index.label_id(l);
        if (g < 0)
            throw VerifyError("controller label '" + l.str() +
                              "' is not in the composition alphabet");
        ctrl_local[g] = controller.alphabet_index(l);
    }

    VerificationReport report;
    std::vector<ClosedLoopState> states;
    std::unordered_map<ClosedLoopState, StateId, ClosedLoopHash> ids;
    std::vector<std::pair<StateId, LabelId>> parent; // BFS tree for witnesses
    std::vector<std::vector<StateId>> region_edges;  // non-discharge closed-loop edges

    auto trace_to = [&](StateId s, LabelId extra = -1) {
        std::vector<Label> labels;
        for (StateId at = s; parent[at].first != kNoState; at = parent[at].first)
            labels.push_back(index.label(parent[at].second));
        std::reverse(labels.begin(), labels.end());
        if (extra >= 0)
            labels.push_back(index.label(extra));
        return labels;
    };

    ClosedLoopState initial{index.initial_state(), controller.initial};
    ids.emplace(initial, 0);
    states.push_back(initial);
    parent.emplace_back(kNoState, -1);
    region_edges.emplace_back();

    std::vector<std::pair<LabelId, CompositeState>> env_enabled;
    for (size_t head = 0; head < states.size(); ++head) {
        ClosedLoopState current = states[head];
        index.enabled(current.env, env_enabled);
        bool any_transition = false;
        for (auto& [label, env_succ] : env_enabled) {
            StateId ctrl_succ = current.ctrl;
            if (ctrl_local[label] >= 0) {
                ctrl_succ = controller.successor(current.ctrl, ctrl_local[label]);
                if (ctrl_succ == kNoState) {
                    // The controller disables this label. Legitimate for
                    // controllable actions; a blocked uncontrollable is a
                    // modeling lie unless it would discharge anyway.
                    if (!problem.is_controllable(label) && !problem.is_reach(label)) {
                        report.violations.push_back(
                            {Violation::Kind::Blocking,
                             "uncontrollable '" + index.label(label).str() +
                                 "' enabled by the environment but blocked by the controller",
                             trace_to(static_cast<StateId>(head), label)});
                    }
                    continue;
                }
            }
            any_transition = true;
            if (problem.is_avoid(label)) {
                report.violations.push_back(
                    {Violation::Kind::Avoid,
                     "avoid label '" + index.label(label).str() + "' fires in the closed loop",
                     trace_to(static_cast<StateId>(head), label)});
                continue; // post-violation region is irrelevant
            }
            if (problem.is_reach(label))
                continue; // discharge: the obligation is met here
            ClosedLoopState next{std::move(env_succ), ctrl_succ};
            auto [it, fresh] = ids.try_emplace(next, static_cast<StateId>(states.size()));
            if (fresh) {
                if (states.size() >= cap)
                    throw CapacityError("closed loop too large (over " + std::to_string(cap) +
                                        " states)");
                states.push_back(std::move(next));
                parent.emplace_back(static_cast<StateId>(head), label);
                region_edges.emplace_back();
            }
            region_edges[head].push_back(it->second);
        }
        if (!any_transition)
            report.violations.push_back({Violation::Kind::Discharge,
                                         "closed-loop deadlock before any discharge",
                                         trace_to(static_cast<StateId>(head))});
    }

    // A discharge-free cycle would let a maximal path run forever without
    // meeting the co-safety goal.
    {
        std::vector<int32_t> indegree(states.size(), 0);
        for (const auto& row : region_edges)
            for (StateId t : row)
                indegree[t]++;
        std::vector<StateId> queue;
        for (size_t s = 0; s < states.size(); ++s)
            if (indegree[s] == 0)
                queue.push_back(static_cast<StateId>(s));
        size_t removed = 0;
        while (!queue.empty()) {
            StateId s = queue.back();
            queue.pop_back();
            ++removed;
            for (StateId t : region_edges[s])
                if (--indegree[t] == 0)
                    queue.push_back(t);
        }
        if (removed < states.size()) {
            StateId witness = kNoState;
            for (size_t s = 0; s < states.size() && witness == kNoState; ++s)
                if (indegree[s] > 0)
                    witness = static_cast<StateId>(s);
            report.violations.push_back(
                {Violation::Kind::Discharge,
                 "closed loop can cycle forever without discharging (" +
                     std::to_string(states.size() - removed) + " states involved)",
                 trace_to(witness)});
        }
    }

    report.closed_loop_states = states.size();
    report.ok = report.violations.empty();
    return report;
}

} // namespace dcs
