#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "dcs/abstraction.hpp"
#include "dcs/compose.hpp"
#include "dcs/problem.hpp"

namespace dcs {

using NodeId = int32_t;

enum class NodeStatus : uint8_t { Open, Goal, Error };

// Best-first open list: pop returns the minimal estimate; ties break
// toward the larger sequence number (LIFO), so equal-estimate children
// are expanded before their ancestors and the search dives.
class OpenQueue {
public:
    struct Entry {
        uint32_t priority;
        uint64_t seq;
        NodeId node;
        uint32_t cursor; // node's explored-count when queued; stale if it moved on
    };

    void push(uint32_t priority, NodeId node, uint32_t cursor);
    Entry pop();
    bool empty() const { return heap_.empty(); }
    size_t size() const { return heap_.size(); }

private:
    std::vector<Entry> heap_;
    uint64_t next_seq_ = 0;
};

struct SynthesisStats {
    int64_t expanded = 0;           // distinct composite states expanded
    int64_t abstractions_built = 0; // heuristic evaluations
    int64_t peak_open = 0;
    int64_t wall_ms = 0;
    int64_t nodes_created = 0;
    int64_t reopened = 0;
};

enum class SynthesisVerdict {
    Controller,    // initial state goal-marked; controller extracted
    NoController,  // initial state error-marked (or search exhausted)
    ExpansionCap,  // --max-expansions hit
    Timeout,       // wall-clock cap hit
};

const char* to_string(SynthesisVerdict v);

// Synthesis output: an LTS over the composition alphabet plus the
// composite state behind every controller state.
struct Controller {
    Lts lts;
    std::vector<CompositeState> state_map;
};

struct SynthesisLimits {
    int64_t max_expansions = -1; // <0: unlimited
    Deadline deadline;
};

struct SynthesisResult {
    SynthesisVerdict verdict;
    std::optional<Controller> controller;
    SynthesisStats stats;
};

// On-the-fly best-first exploration of the composition, guided by the
// abstraction ranking. Exposed as a class so tests can drive the loop
// step by step; plain callers use synthesize() below.
class Synthesizer {
public:
    explicit Synthesizer(const ControlProblem& problem, SynthesisLimits limits = {});

    SynthesisResult run();

    // One pop-and-expand step. Returns false when the search is done
    // (root resolved, queue exhausted, or a cap was hit).
    bool step();

    NodeStatus root_status() const;
    // Meaningful once step() returned false: an open root with an
    // exhausted queue has provably no controller.
    SynthesisVerdict verdict() const;
    const SynthesisStats& stats() const { return stats_; }
    Controller extract_controller() const;

    // Introspection for tests.
    struct ChildEdge {
        LabelId label;
        enum class Kind : uint8_t { Discharge, AvoidEdge, Child } kind;
        NodeId child;          // for Kind::Child
        CompositeState target; // composite successor (all kinds)
    };
    struct Node {
        CompositeState state;
        Classification cls;
        NodeStatus status = NodeStatus::Open;
        std::vector<RankedAction> actions; // exploration list, ascending estimates
        uint32_t explored = 0;
        uint32_t pending = 0;   // explored edges to still-open nodes
        uint32_t satisfied = 0; // explored edges resolved goal/discharge
        int32_t winning_edge = -1; // controllable nodes: child edge that won
        std::vector<std::pair<NodeId, LabelId>> parents;
        std::vector<ChildEdge> children;
    };
    const Node& node(NodeId id) const { return nodes_[id]; }
    NodeId find_node(const CompositeState& cs) const;
    size_t n_nodes() const { return nodes_.size(); }
    size_t open_size() const { return open_.size(); }

private:
    NodeId materialize(const CompositeState& cs);
    void resolve(NodeId id, NodeStatus status);
    void propagate(NodeId id);
    void attach_outcome(NodeId parent, const ChildEdge& edge, NodeStatus child_status);
    void requeue(NodeId id);
    uint32_t best_remaining(const Node& n) const;

    const ControlProblem& problem_;
    SynthesisLimits limits_;
    std::vector<Node> nodes_;
    std::unordered_map<CompositeState, NodeId, CompositeStateHash> by_state_;
    OpenQueue open_;
    NodeId root_ = -1;
    SynthesisStats stats_;
    std::optional<SynthesisVerdict> cap_verdict_;
    std::chrono::steady_clock::time_point started_;
};

SynthesisResult synthesize(const ControlProblem& problem, SynthesisLimits limits = {});

// One JSON line: {"expanded":..,"abstractions_built":..,"peak_open":..,
// "wall_ms":..,"verdict":".."}.
std::string stats_json(const SynthesisStats& stats, SynthesisVerdict verdict);

} // namespace dcs
