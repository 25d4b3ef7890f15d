#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dcs/label.hpp"

namespace dcs {

using StateId = int32_t;

constexpr StateId kNoState = -1;

// A transition inside one Lts; `label` indexes the owning Lts's alphabet.
struct LtsTransition {
    int32_t label;
    StateId target;

    auto operator<=>(const LtsTransition&) const = default;
};

// A deterministic labeled transition system. States are dense ids
// 0..n-1, the alphabet is sorted in canonical label order, and each
// state's transition list is sorted by label (unique per label).
//
// `error_state` marks the distinguished absorbing ERROR state, if any.
// A composite state with any component in its error state is treated by
// the composition as a dead end (see SyncIndex::enabled).
struct Lts {
    std::string name;
    std::vector<Label> alphabet;
    std::vector<std::vector<LtsTransition>> states;
    StateId initial = 0;
    StateId error_state = kNoState;
    std::vector<std::string> state_names; // optional; empty or one per state

    size_t n_states() const { return states.size(); }
    const Label& label_of(int32_t alphabet_index) const { return alphabet[alphabet_index]; }

    // -1 if the label is not in the alphabet.
    int32_t alphabet_index(const Label& label) const;

    // kNoState if no transition; deterministic, so at most one.
    StateId successor(StateId state, int32_t alphabet_index) const;

    std::string state_name(StateId s) const;
};

// Throws dcs::Error on any structural violation (bad ids, unsorted or
// duplicate alphabet, nondeterminism, transition label outside alphabet).
void validate(const Lts& lts);

// True iff a run from the initial state consumes the whole trace.
bool accepts_trace(const Lts& lts, std::span<const Label> trace);

// Incremental construction helper used by the elaborator, the .aut
// reader and tests. Collects states/transitions in any order, then
// build() sorts transition lists, checks determinism and validates.
class LtsBuilder {
public:
    // Returns the id for `name`, creating the state on first use.
    StateId state(const std::string& name);
    bool has_state(const std::string& name) const;

    void transition(StateId from, const Label& label, StateId to);
    void alphabet_add(const Label& label); // labels without transitions
    void mark_error(StateId s);

    size_t n_states() const { return names_.size(); }

    Lts build(std::string lts_name, StateId initial) const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<std::string, StateId>> index_; // sorted name -> id
    struct RawTransition {
        StateId from;
        Label label;
        StateId to;
    };
    std::vector<RawTransition> transitions_;
    LabelSet extra_alphabet_;
    StateId error_ = kNoState;
};

} // namespace dcs
