#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>

#include "dcs/problem.hpp"

namespace dcs {

// Vertex of the abstracting path graph: one component state, numbered
// globally as SyncIndex::vertex_offset(comp) + state. The graph lives on
// the UNION of component state spaces, not on their product.
using VertexId = int32_t;

struct ComponentStateRef {
    int32_t component;
    StateId state;

    auto operator<=>(const ComponentStateRef&) const = default;
};

ComponentStateRef vertex_ref(const SyncIndex& index, VertexId v);
VertexId vertex_id(const SyncIndex& index, ComponentStateRef ref);

constexpr uint32_t kInfiniteEstimate = std::numeric_limits<uint32_t>::max();

struct AbstractionEdge {
    VertexId source;
    LabelId label;
    VertexId target;
    bool goal;       // label is in the reach set
    bool stationary; // source waits in place while another component fires

    auto operator<=>(const AbstractionEdge&) const = default;
};

// Result of the abstracting-composition build rooted at one composite
// state: the path-graph edges (in processing order), the generation of
// every vertex that appeared (-1 otherwise), the vertices still flagged
// as errors when the build stopped (states that never fired a
// transition), and the frontier growth history.
//
// frontier_additions[g] lists the vertices first added to the frontier
// at step g; frontier_additions[0] is the root's component states. The
// cumulative unions reproduce the abstraction's sequence of sets of
// states; an entry may be empty when an iteration fired transitions
// without discovering frontier states.
struct AbstractionResult {
    std::vector<AbstractionEdge> edges;
    std::vector<int32_t> generation;
    std::vector<char> error_vertex;
    std::vector<std::vector<VertexId>> frontier_additions;

    size_t growth_steps() const;
    bool in_errors(VertexId v) const { return error_vertex[v] != 0; }
};

// Builds the abstracting path graph from the component states of `root`
// (all at generation 0). Each iteration fires every ready transition
// under the pairwise relaxed synchronization rule: a label private to
// one component fires from any frontier state enabling it; a shared
// label fires when two frontier states of distinct participating
// components jointly enable it, recording edges from both sources to
// both targets. Fired sources leave `errors`; fresh targets get the
// current generation; the frontier grows only through non-avoid labels.
// A transition already recorded is never processed again.
//
// Once a label has fired, every frontier vertex whose component does not
// carry that label also gets a stationary self-edge for it: the set-step
// semantics lets a state wait while the rest of the system moves, and a
// trace may discharge entirely through other components. Stationary
// edges never touch the errors set, generations or the frontier.
AbstractionResult build_abstraction(const ControlProblem& problem, const CompositeState& root);

// Path-graph edge weight: max(1, gen(target) - gen(source)). Generation
// skips stand for the tau-delays of the abstraction, one unit each.
uint32_t edge_weight(const AbstractionEdge& edge, std::span<const int32_t> generation);

// Estimated distance-to-discharge per vertex: min over outgoing edges of
// weight(e) for reach-labeled edges, weight(e) + D(target) otherwise;
// avoid-labeled edges contribute infinity, as do error vertices and
// vertices with no finite continuation. Dijkstra over reversed edges
// (generation-skipping edges have weight > 1, so plain BFS would be
// wrong).
std::vector<uint32_t> backpropagate(const ControlProblem& problem,
                                    const AbstractionResult& result);

struct RankedAction {
    LabelId label;
    uint32_t estimate;
    CompositeState successor;
};

// Estimates sorted ascending (ties in canonical label order) for exactly
// the labels enabled at `cs` under the real composition semantics.
// estimate(l) = min over generation-0 edges labeled l of
//   weight(e)            if l is a reach label,
//   weight(e) + D(target) otherwise;
// labels in avoid rank at infinity.
struct ActionRanking {
    std::vector<RankedAction> entries;
};

ActionRanking rank_actions(const ControlProblem& problem, const CompositeState& cs);
ActionRanking rank_actions(const ControlProblem& problem, const AbstractionResult& abstraction,
                           std::vector<std::pair<LabelId, CompositeState>> enabled_actions);

// Labels carried by the abstract transition out of a frontier set, i.e.
// every label some frontier state (pair, for shared labels) enables.
std::vector<LabelId> relaxed_enabled_labels(const SyncIndex& index,
                                            std::span<const VertexId> frontier);

// Debug rendering: vertex name "component:state", generation in the
// vertex label, action on each edge. Error vertices shaded, goal edges
// bold.
void write_abstraction_dot(std::ostream& os, const ControlProblem& problem,
                           const AbstractionResult& result);

} // namespace dcs
