#include "dcs/engine.hpp"

#include <algorithm>
#include <sstream>

#include "dcs/error.hpp"

namespace dcs {

void OpenQueue::push(uint32_t priority, NodeId node, uint32_t cursor) {
    heap_.push_back({priority, next_seq_++, node, cursor});
    std::push_heap(heap_.begin(), heap_.end(), [](const Entry& a, const Entry& b) {
        if (a.priority != b.priority)
            return a.priority > b.priority; // min priority on top
        return a.seq < b.seq;               // then max seq (LIFO)
    });
}

OpenQueue::Entry OpenQueue::pop() {
    std::pop_heap(heap_.begin(), heap_.end(), [](const Entry& a, const Entry& b) {
        if (a.priority != b.priority)
            return a.priority > b.priority;
        return a.seq < b.seq;
    });
    Entry top = heap_.back();
    heap_.pop_back();
    return top;
}

const char* to_string(SynthesisVerdict v) {
    switch (v) {
    case SynthesisVerdict::Controller: return "controller";
    case SynthesisVerdict::NoController: return "none";
    case SynthesisVerdict::ExpansionCap: return "out-of-memory";
    case SynthesisVerdict::Timeout: return "timeout";
    }
    return "?";
}

Synthesizer::Synthesizer(const ControlProblem& problem, SynthesisLimits limits)
    : problem_(problem), limits_(limits), started_(std::chrono::steady_clock::now()) {
    root_ = materialize(problem_.index().initial_state());
}

NodeId Synthesizer::materialize(const CompositeState& cs) {
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
    by_state_.emplace(cs, id);
    stats_.nodes_created++;

    auto acts = enabled(problem_, cs);
    Classification cls = classify(problem_, acts);

    Node& n = nodes_[id];
    n.state = cs;
    n.cls = cls;

    if (cls == Classification::Deadlock) {
        // Unproductive states are errors.
        resolve(id, NodeStatus::Error);
        return id;
    }

    bool unc_node = cls != Classification::Controllable;
    if (unc_node) {
        // An enabled uncontrollable avoid action loses outright; no
        // ranking needed.
        for (const auto& [label, succ] : acts) {
            if (!problem_.is_controllable(label) && problem_.is_avoid(label)) {
                resolve(id, NodeStatus::Error);
                return id;
            }
        }
    }

    ActionRanking ranking = rank_actions(problem_, build_abstraction(problem_, cs), std::move(acts));
    stats_.abstractions_built++;

    auto& node = nodes_[id];
    if (unc_node) {
        // Mixed states are treated as uncontrollable: only the
        // uncontrollable actions decide (and populate) the node.
        for (auto& entry : ranking.entries)
            if (!problem_.is_controllable(entry.label))
                node.actions.push_back(std::move(entry));
    } else {
        node.actions = std::move(ranking.entries);
    }
    requeue(id);
    return id;
}

uint32_t Synthesizer::best_remaining(const Node& n) const {
    // Controllable nodes explore ascending from the front; uncontrollable
    // ones explore the worst action first, consuming the list from the
    // back, so the front stays the best remaining entry either way.
    if (n.cls == Classification::Controllable)
        return n.actions[n.explored].estimate;
    return n.actions[0].estimate;
}

void Synthesizer::requeue(NodeId id) {
    Node& n = nodes_[id];
    if (n.status != NodeStatus::Open || n.explored >= n.actions.size())
        return;
    open_.push(best_remaining(n), id, n.explored);
    stats_.peak_open = std::max(stats_.peak_open, static_cast<int64_t>(open_.size()));
}

void Synthesizer::resolve(NodeId id, NodeStatus status) {
    Node& n = nodes_[id];
    if (n.status != NodeStatus::Open)
        throw Error("E-INTERNAL", "double resolution of an exploration node");
    n.status = status;
    propagate(id);
}

void Synthesizer::propagate(NodeId id) {
    // Walk resolved nodes up the parent links, applying the and/or
    // marking rules; interrupting ancestors with unexplored actions are
    // put back on the open queue.
    std::vector<NodeId> work{id};
    while (!work.empty()) {
        NodeId r = work.back();
        work.pop_back();
        NodeStatus status = nodes_[r].status;
        for (auto [p, label] : nodes_[r].parents) {
            Node& parent = nodes_[p];
            if (parent.status != NodeStatus::Open)
                continue;
            parent.pending--;
            bool parent_ctrl = parent.cls == Classification::Controllable;
            if (status == NodeStatus::Goal) {
                parent.satisfied++;
                if (parent_ctrl) {
                    parent.status = NodeStatus::Goal;
                    for (size_t i = 0; i < parent.children.size(); ++i)
                        if (parent.children[i].label == label) {
                            parent.winning_edge = static_cast<int32_t>(i);
                            break;
                        }
                    work.push_back(p);
                } else if (parent.explored == parent.actions.size() && parent.pending == 0) {
                    parent.status = NodeStatus::Goal;
                    work.push_back(p);
                } else if (parent.explored < parent.actions.size()) {
                    stats_.reopened++;
                    requeue(p);
                }
            } else {
                if (!parent_ctrl) {
                    parent.status = NodeStatus::Error;
                    work.push_back(p);
                } else if (parent.explored == parent.actions.size() && parent.pending == 0 &&
                           parent.satisfied == 0) {
                    parent.status = NodeStatus::Error;
                    work.push_back(p);
                } else if (parent.explored < parent.actions.size()) {
                    stats_.reopened++;
                    requeue(p);
                }
            }
        }
    }
}

void Synthesizer::attach_outcome(NodeId parent_id, const ChildEdge& edge,
                                 NodeStatus child_status) {
    Node& parent = nodes_[parent_id];
    parent.children.push_back(edge);
    if (child_status == NodeStatus::Open) {
        parent.pending++;
        return;
    }
    bool parent_ctrl = parent.cls == Classification::Controllable;
    if (child_status == NodeStatus::Goal) {
        parent.satisfied++;
        if (parent_ctrl) {
            parent.winning_edge = static_cast<int32_t>(parent.children.size() - 1);
            resolve(parent_id, NodeStatus::Goal);
        } else if (parent.explored == parent.actions.size() && parent.pending == 0) {
            resolve(parent_id, NodeStatus::Goal);
        }
    } else {
        if (!parent_ctrl)
            resolve(parent_id, NodeStatus::Error);
        else if (parent.explored == parent.actions.size() && parent.pending == 0 &&
                 parent.satisfied == 0)
            resolve(parent_id, NodeStatus::Error);
    }
}

bool Synthesizer::step() {
    if (nodes_[root_].status != NodeStatus::Open || cap_verdict_ || open_.empty())
        return false;
    if (limits_.deadline && std::chrono::steady_clock::now() > *limits_.deadline) {
        cap_verdict_ = SynthesisVerdict::Timeout;
        return false;
    }

    OpenQueue::Entry entry = open_.pop();
    Node& n = nodes_[entry.node];
    if (n.status != NodeStatus::Open || entry.cursor != n.explored ||
        n.explored >= n.actions.size())
        return true; // stale entry

    if (n.explored == 0) {
        if (limits_.max_expansions >= 0 && stats_.expanded >= limits_.max_expansions) {
            cap_verdict_ = SynthesisVerdict::ExpansionCap;
            return false;
        }
        stats_.expanded++;
    }

    size_t idx = n.cls == Classification::Controllable ? n.explored
                                                       : n.actions.size() - 1 - n.explored;
    // Copy: materialize() below may grow nodes_ and invalidate n.
    RankedAction action = n.actions[idx];
    NodeId parent_id = entry.node;
    nodes_[parent_id].explored++;
    requeue(parent_id);

    if (problem_.is_avoid(action.label)) {
        attach_outcome(parent_id,
                       {action.label, ChildEdge::Kind::AvoidEdge, -1, std::move(action.successor)},
                       NodeStatus::Error);
        return true;
    }
    if (problem_.is_reach(action.label)) {
        attach_outcome(parent_id,
                       {action.label, ChildEdge::Kind::Discharge, -1, std::move(action.successor)},
                       NodeStatus::Goal);
        return true;
    }

    auto it = by_state_.find(action.successor);
    NodeId child = it != by_state_.end() ? it->second : materialize(action.successor);
    NodeStatus child_status = nodes_[child].status;
    if (child_status == NodeStatus::Open)
        nodes_[child].parents.emplace_back(parent_id, action.label);
    attach_outcome(parent_id, {action.label, ChildEdge::Kind::Child, child, std::move(action.successor)},
                   child_status);
    return true;
}

NodeStatus Synthesizer::root_status() const {
    return nodes_[root_].status;
}

NodeId Synthesizer::find_node(const CompositeState& cs) const {
    auto it = by_state_.find(cs);
    return it != by_state_.end() ? it->second : -1;
}

SynthesisVerdict Synthesizer::verdict() const {
    if (cap_verdict_)
        return *cap_verdict_;
    if (nodes_[root_].status == NodeStatus::Goal)
        return SynthesisVerdict::Controller;
    // An exhausted queue with the root still open means every reachable
    // node ran out of actions without deriving a win: the remaining open
    // cycles cannot force a discharge, so there is no controller.
    return SynthesisVerdict::NoController;
}

SynthesisResult Synthesizer::run() {
    while (step()) {
    }
    stats_.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - started_)
                         .count();
    SynthesisResult result{verdict(), std::nullopt, stats_};
    if (result.verdict == SynthesisVerdict::Controller)
        result.controller = extract_controller();
    return result;
}

Controller Synthesizer::extract_controller() const {
    if (nodes_[root_].status != NodeStatus::Goal)
        throw Error("E-INTERNAL", "extraction requires a goal-marked root");

    // A controllable node contributes exactly the edge that caused its
    // goal-marking; that causal order is well-founded, so the extracted
    // non-discharge subgraph is acyclic and every run keeps making
    // progress toward a discharge. (Keeping other explored edges that
    // happen to point at winners can close controllable loops the
    // scheduler could spin on forever.) Uncontrollable and mixed nodes
    // contribute every uncontrollable action, all of which must have won.
    auto kept_edges = [&](NodeId id) {
        std::vector<ChildEdge> kept;
        const Node& n = nodes_[id];
        if (n.cls == Classification::Controllable) {
            if (n.winning_edge < 0)
                throw Error("E-INTERNAL", "goal-marked controllable node without a winning edge");
            kept.push_back(n.children[n.winning_edge]);
            return kept;
        }
        for (const ChildEdge& e : n.children) {
            switch (e.kind) {
            case ChildEdge::Kind::Discharge:
                kept.push_back(e);
                break;
            case ChildEdge::Kind::AvoidEdge:
                throw Error("E-INTERNAL", "avoid edge under an uncontrollable winner");
            case ChildEdge::Kind::Child:
                if (nodes_[e.child].status != NodeStatus::Goal)
                    throw Error("E-INTERNAL",
                                "uncontrollable successor of a winning node is not goal-marked");
                kept.push_back(e);
                break;
            }
        }
        std::sort(kept.begin(), kept.end(),
                  [](const ChildEdge& a, const ChildEdge& b) { return a.label < b.label; });
        return kept;
    };

    // Pass 1: number the winning nodes in BFS inclusion order.
    std::vector<NodeId> order;
    std::unordered_map<NodeId, StateId> ctrl_id;
    std::unordered_map<CompositeState, StateId, CompositeStateHash> by_composite;
    order.push_back(root_);
    ctrl_id[root_] = 0;
    by_composite[nodes_[root_].state] = 0;
    for (size_t head = 0; head < order.size(); ++head) {
        for (const ChildEdge& e : kept_edges(order[head])) {
            if (e.kind != ChildEdge::Kind::Child || ctrl_id.count(e.child))
                continue;
            StateId id = static_cast<StateId>(order.size());
            ctrl_id[e.child] = id;
            by_composite[nodes_[e.child].state] = id;
            order.push_back(e.child);
        }
    }

    Controller controller;
    controller.lts.name = "controller";
    controller.lts.alphabet = problem_.index().alphabet();
    controller.lts.states.resize(order.size());
    controller.state_map.reserve(order.size());
    for (NodeId id : order)
        controller.state_map.push_back(nodes_[id].state);

    // Pass 2: emit transitions; discharge targets either close a cycle on
    // an included state or become fresh terminal states.
    for (size_t i = 0; i < order.size(); ++i) {
        for (const ChildEdge& e : kept_edges(order[i])) {
            StateId target;
            if (e.kind == ChildEdge::Kind::Child) {
                target = ctrl_id.at(e.child);
            } else {
                auto it = by_composite.find(e.target);
                if (it != by_composite.end()) {
                    target = it->second;
                } else {
                    target = static_cast<StateId>(controller.lts.states.size());
                    by_composite.emplace(e.target, target);
                    controller.lts.states.emplace_back();
                    controller.state_map.push_back(e.target);
                }
            }
            controller.lts.states[i].push_back({e.label, target});
        }
    }
    controller.lts.initial = 0;
    validate(controller.lts);
    return controller;
}

SynthesisResult synthesize(const ControlProblem& problem, SynthesisLimits limits) {
    Synthesizer synth(problem, limits);
    return synth.run();
}

std::string stats_json(const SynthesisStats& stats, SynthesisVerdict verdict) {
    std::ostringstream os;
    os << "{\"expanded\":" << stats.expanded
       << ",\"abstractions_built\":" << stats.abstractions_built
       << ",\"peak_open\":" << stats.peak_open << ",\"wall_ms\":" << stats.wall_ms
       << ",\"verdict\":\"" << to_string(verdict) << "\"}";
    return os.str();
}

} // namespace dcs
