#include "dcs/abstraction.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <queue>
#include <unordered_set>

#include "dcs/error.hpp"

namespace dcs {

ComponentStateRef vertex_ref(const SyncIndex& index, VertexId v) {
    size_t lo = 0, hi = index.n_components() - 1;
    while (lo < hi) {
        size_t mid = (lo + hi + 1) / 2;
        if (index.vertex_offset(mid) <= v)
            lo = mid;
        else
            hi = mid - 1;
    }
    return {static_cast<int32_t>(lo), v - index.vertex_offset(lo)};
}

VertexId vertex_id(const SyncIndex& index, ComponentStateRef ref) {
    return index.vertex_offset(ref.component) + ref.state;
}

size_t AbstractionResult::growth_steps() const {
    size_t n = 0;
    for (const auto& added : frontier_additions)
        if (!added.empty())
            ++n;
    return n;
}

namespace {

uint64_t edge_key(VertexId s, LabelId l, VertexId t) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(s)) << 42) |
           (static_cast<uint64_t>(static_cast<uint32_t>(l)) << 21) |
           static_cast<uint64_t>(static_cast<uint32_t>(t));
}

// Incremental frontier bookkeeping for the relaxed synchronization rule.
// For every label we keep the frontier transitions enabling it, per
// component; adding a vertex pairs its transitions against the entries
// of the other components exactly once.
struct FrontierState {
    const SyncIndex& index;
    struct Entry {
        int32_t comp;
        VertexId src;
        VertexId dst;
    };
    std::vector<std::vector<Entry>> by_label;
    std::vector<char> label_fired; // some mover edge for the label exists
    std::vector<char> in_frontier;
    std::vector<VertexId> members; // frontier vertices in join order
    std::unordered_set<uint64_t> seen; // queued or processed edge triples
    std::vector<AbstractionEdge> pending;

    explicit FrontierState(const SyncIndex& idx)
        : index(idx), by_label(idx.n_labels()), label_fired(idx.n_labels(), 0),
          in_frontier(idx.total_states(), 0) {}

    void emit(VertexId s, LabelId l, VertexId t, bool goal, bool stationary = false) {
        if (seen.insert(edge_key(s, l, t)).second)
            pending.push_back({s, l, t, goal, stationary});
    }

    // First mover for a label: every frontier vertex of a component not
    // carrying the label can now wait while it fires elsewhere.
    void fire_label(const ControlProblem& problem, LabelId l) {
        if (label_fired[l])
            return;
        label_fired[l] = 1;
        bool goal = problem.is_reach(l);
        for (VertexId u : members)
            if (!index.in_alphabet(vertex_ref(index, u).component, l))
                emit(u, l, u, goal, true);
    }

    void add_vertex(const ControlProblem& problem, VertexId v) {
        if (in_frontier[v])
            return;
        in_frontier[v] = 1;
        members.push_back(v);
        ComponentStateRef ref = vertex_ref(index, v);
        int32_t offset = index.vertex_offset(ref.component);
        for (const LtsTransition& t : index.global_transitions(ref.component, ref.state)) {
            LabelId l = t.label;
            VertexId dst = offset + t.target;
            bool goal = problem.is_reach(l);
            if (index.participants(l).size() == 1) {
                emit(v, l, dst, goal);
                fire_label(problem, l);
            } else {
                bool paired = false;
                for (const Entry& other : by_label[l]) {
                    if (other.comp == ref.component)
                        continue;
                    // A synchronizing pair steps both components; the
                    // path graph records all four source/target
                    // combinations (inter-LTS edges included).
                    emit(v, l, dst, goal);
                    emit(v, l, other.dst, goal);
                    emit(other.src, l, dst, goal);
                    emit(other.src, l, other.dst, goal);
                    paired = true;
                }
                by_label[l].push_back({ref.component, v, dst});
                if (paired)
                    fire_label(problem, l);
            }
        }
        for (LabelId l = 0; l < static_cast<LabelId>(index.n_labels()); ++l)
            if (label_fired[l] && !index.in_alphabet(ref.component, l))
                emit(v, l, v, problem.is_reach(l), true);
    }
};

} // namespace

AbstractionResult build_abstraction(const ControlProblem& problem, const CompositeState& root) {
    const SyncIndex& index = problem.index();
    if (!index.valid_state(root))
        throw Error("E-ELAB", "invalid composite state");

    AbstractionResult res;
    res.generation.assign(index.total_states(), -1);
    res.error_vertex.assign(index.total_states(), 0);

    FrontierState frontier(index);
    std::vector<char> fired(index.total_states(), 0);

    res.frontier_additions.emplace_back();
    for (size_t c = 0; c < index.n_components(); ++c) {
        VertexId v = index.vertex_offset(c) + root[c];
        res.generation[v] = 0;
        res.error_vertex[v] = 1;
        res.frontier_additions[0].push_back(v);
        frontier.add_vertex(problem, v);
    }

    std::vector<AbstractionEdge> ready = std::move(frontier.pending);
    frontier.pending.clear();

    int32_t g = 1;
    while (!ready.empty()) {
        res.frontier_additions.emplace_back();
        auto& added = res.frontier_additions.back();
        for (const AbstractionEdge& e : ready) {
            res.edges.push_back(e);
            if (e.stationary)
                continue; // waiting neither fires the source nor adds states
            res.error_vertex[e.source] = 0;
            fired[e.source] = 1;
            bool fresh = res.generation[e.target] < 0;
            if (fresh)
                res.generation[e.target] = g;
            if (!e.goal && !fired[e.target])
                res.error_vertex[e.target] = 1;
            if (!problem.is_avoid(e.label) && !frontier.in_frontier[e.target]) {
                added.push_back(e.target);
                frontier.add_vertex(problem, e.target);
            }
        }
        ready = std::move(frontier.pending);
        frontier.pending.clear();
        ++g;
    }
    return res;
}

uint32_t edge_weight(const AbstractionEdge& edge, std::span<const int32_t> generation) {
    int32_t delta = generation[edge.target] - generation[edge.source];
    return delta > 1 ? static_cast<uint32_t>(delta) : 1u;
}

namespace {

uint32_t saturating_add(uint32_t a, uint32_t b) {
    if (a == kInfiniteEstimate || b == kInfiniteEstimate)
        return kInfiniteEstimate;
    return a + b;
}

} // namespace

std::vector<uint32_t> backpropagate(const ControlProblem& problem,
                                    const AbstractionResult& result) {
    const size_t n = result.generation.size();
    std::vector<uint32_t> dist(n, kInfiniteEstimate);

    // Reverse adjacency over non-goal, non-avoid edges.
    std::vector<std::vector<std::pair<VertexId, uint32_t>>> incoming(n);
    std::priority_queue<std::pair<uint32_t, VertexId>, std::vector<std::pair<uint32_t, VertexId>>,
                        std::greater<>>
        heap;
    for (const AbstractionEdge& e : result.edges) {
        if (problem.is_avoid(e.label))
            continue;
        uint32_t w = edge_weight(e, result.generation);
        if (e.goal) {
            if (w < dist[e.source]) {
                dist[e.source] = w;
                heap.emplace(w, e.source);
            }
        } else {
            incoming[e.target].emplace_back(e.source, w);
        }
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d != dist[v])
            continue;
        for (auto [u, w] : incoming[v]) {
            uint32_t cand = saturating_add(d, w);
            if (cand < dist[u]) {
                dist[u] = cand;
                heap.emplace(cand, u);
            }
        }
    }
    return dist;
}

ActionRanking rank_actions(const ControlProblem& problem, const AbstractionResult& abstraction,
                           std::vector<std::pair<LabelId, CompositeState>> enabled_actions) {
    std::vector<uint32_t> dist = backpropagate(problem, abstraction);

    std::vector<uint32_t> estimate(problem.index().n_labels(), kInfiniteEstimate);
    for (const AbstractionEdge& e : abstraction.edges) {
        if (abstraction.generation[e.source] != 0)
            continue;
        uint32_t w = edge_weight(e, abstraction.generation);
        uint32_t value = e.goal ? w : saturating_add(w, dist[e.target]);
        if (value < estimate[e.label])
            estimate[e.label] = value;
    }

    ActionRanking ranking;
    ranking.entries.reserve(enabled_actions.size());
    for (auto& [label, succ] : enabled_actions) {
        uint32_t est = problem.is_avoid(label) ? kInfiniteEstimate : estimate[label];
        ranking.entries.push_back({label, est, std::move(succ)});
    }
    std::stable_sort(ranking.entries.begin(), ranking.entries.end(),
                     [](const RankedAction& a, const RankedAction& b) {
                         if (a.estimate != b.estimate)
                             return a.estimate < b.estimate;
                         return a.label < b.label;
                     });
    return ranking;
}

ActionRanking rank_actions(const ControlProblem& problem, const CompositeState& cs) {
    return rank_actions(problem, build_abstraction(problem, cs), enabled(problem, cs));
}

std::vector<LabelId> relaxed_enabled_labels(const SyncIndex& index,
                                            std::span<const VertexId> frontier) {
    std::vector<char> in_set(index.total_states(), 0);
    for (VertexId v : frontier)
        in_set[v] = 1;
    std::vector<LabelId> out;
    for (LabelId l = 0; l < static_cast<LabelId>(index.n_labels()); ++l) {
        const auto& parts = index.participants(l);
        int enabled_comps = 0;
        for (int32_t c : parts) {
            const Lts& lts = index.component(c);
            int32_t local = lts.alphabet_index(index.label(l));
            bool any = false;
            for (StateId s = 0; s < static_cast<StateId>(lts.n_states()) && !any; ++s)
                if (in_set[index.vertex_offset(c) + s] && lts.successor(s, local) != kNoState)
                    any = true;
            if (any)
                ++enabled_comps;
        }
        bool available = parts.size() == 1 ? enabled_comps >= 1 : enabled_comps >= 2;
        if (available)
            out.push_back(l);
    }
    return out;
}

void write_abstraction_dot(std::ostream& os, const ControlProblem& problem,
                           const AbstractionResult& result) {
    const SyncIndex& index = problem.index();
    os << "digraph abstraction {\n  rankdir=LR;\n  node [shape=box];\n";
    for (VertexId v = 0; v < static_cast<VertexId>(result.generation.size()); ++v) {
        if (result.generation[v] < 0)
            continue;
        ComponentStateRef ref = vertex_ref(index, v);
        const Lts& lts = index.component(ref.component);
        os << "  v" << v << " [label=\"" << lts.name << ':' << lts.state_name(ref.state)
           << "\\ng=" << result.generation[v] << '"';
        if (result.in_errors(v))
            os << ", style=filled, fillcolor=lightpink";
        os << "];\n";
    }
    for (const AbstractionEdge& e : result.edges) {
        os << "  v" << e.source << " -> v" << e.target << " [label=\""
           << index.label(e.label).str() << '"';
        if (e.goal)
            os << ", penwidth=2";
        os << "];\n";
    }
    os << "}\n";
}

} // namespace dcs
