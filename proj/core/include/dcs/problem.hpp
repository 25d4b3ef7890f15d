#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dcs/lts.hpp"

namespace dcs {

// Index into the global (union) alphabet of a component list.
using LabelId = int32_t;

// One state per component, in component order.
using CompositeState = std::vector<StateId>;

struct CompositeStateHash {
    size_t operator()(const CompositeState& cs) const {
        size_t h = 0xcbf29ce484222325ULL;
        for (StateId s : cs) {
            h ^= static_cast<size_t>(s) + 0x9e3779b97f4a7c15ULL;
            h *= 0x100000001b3ULL;
        }
        return h;
    }
};

// Precomputed synchronization structure over a component list: the global
// alphabet, per-label participant components, and per-component transition
// tables keyed by global label ids. Immutable after construction.
class SyncIndex {
public:
    explicit SyncIndex(std::vector<Lts> components);

    size_t n_components() const { return components_.size(); }
    const Lts& component(size_t i) const { return components_[i]; }
    const std::vector<Lts>& components() const { return components_; }

    const std::vector<Label>& alphabet() const { return alphabet_; }
    const Label& label(LabelId l) const { return alphabet_[l]; }
    LabelId label_id(const Label& label) const; // -1 if absent
    size_t n_labels() const { return alphabet_.size(); }

    const std::vector<int32_t>& participants(LabelId l) const { return participants_[l]; }
    bool in_alphabet(size_t comp, LabelId l) const { return local_index_[comp][l] >= 0; }

    // kNoState if component `comp` has no `l`-transition at `s`.
    StateId successor(size_t comp, StateId s, LabelId l) const;

    // Component transitions with labels mapped to global label ids,
    // sorted by label.
    std::span<const LtsTransition> global_transitions(size_t comp, StateId s) const {
        return trans_[comp][s];
    }

    CompositeState initial_state() const;
    bool valid_state(const CompositeState& cs) const;

    bool is_error_state(size_t comp, StateId s) const {
        return components_[comp].error_state == s;
    }
    // LTSA-style ERROR absorption: a composite with any component in its
    // ERROR state has no outgoing transitions.
    bool composite_is_error(const CompositeState& cs) const;

    // All enabled (label, successor) pairs at `cs`, sorted by canonical
    // label order. A label is enabled iff every participant enables it;
    // the successor updates exactly the participating components.
    void enabled(const CompositeState& cs,
                 std::vector<std::pair<LabelId, CompositeState>>& out) const;
    std::vector<std::pair<LabelId, CompositeState>> enabled(const CompositeState& cs) const;

    // Total component state count (abstraction vertex space).
    size_t total_states() const { return total_states_; }
    // Vertex numbering used by the abstraction: offset(comp) + state.
    int32_t vertex_offset(size_t comp) const { return offsets_[comp]; }

private:
    std::vector<Lts> components_;
    std::vector<Label> alphabet_;
    std::vector<std::vector<int32_t>> participants_;     // per label
    std::vector<std::vector<int32_t>> local_index_;      // [comp][label] -> local alphabet idx or -1
    std::vector<std::vector<std::vector<LtsTransition>>> trans_; // [comp][state] sorted by global label
    std::vector<int32_t> offsets_;
    size_t total_states_ = 0;
};

enum class Classification {
    Controllable,   // >=1 enabled action, all controllable
    Uncontrollable, // >=1 enabled action, all uncontrollable
    Mixed,          // both kinds enabled (treated as uncontrollable)
    Deadlock,       // nothing enabled
};

const char* to_string(Classification c);

// A control problem: environment components plus the controllable label
// partition and the reach (co-safety) / avoid (safety) goal sets.
//
// Goal sets are intersected with the union alphabet on construction;
// reach must be nonempty afterwards and disjoint from avoid.
class ControlProblem {
public:
    ControlProblem(std::vector<Lts> components, LabelSet controllable, LabelSet reach,
                   LabelSet avoid);

    const SyncIndex& index() const { return index_; }
    size_t n_components() const { return index_.n_components(); }
    const Lts& component(size_t i) const { return index_.component(i); }

    bool is_controllable(LabelId l) const { return controllable_[l]; }
    bool is_reach(LabelId l) const { return reach_[l]; }
    bool is_avoid(LabelId l) const { return avoid_[l]; }

    const LabelSet& controllable_labels() const { return controllable_set_; }
    const LabelSet& reach_labels() const { return reach_set_; }
    const LabelSet& avoid_labels() const { return avoid_set_; }

private:
    SyncIndex index_;
    std::vector<char> controllable_, reach_, avoid_; // by LabelId
    LabelSet controllable_set_, reach_set_, avoid_set_;
};

std::vector<std::pair<LabelId, CompositeState>> enabled(const ControlProblem& problem,
                                                        const CompositeState& cs);

Classification classify(const ControlProblem& problem, const CompositeState& cs);
Classification classify(const ControlProblem& problem,
                        std::span<const std::pair<LabelId, CompositeState>> enabled_actions);

} // namespace dcs
