#include "dcs/lts.hpp"

#include <algorithm>

#include "dcs/error.hpp"

namespace dcs {

int32_t Lts::alphabet_index(const Label& label) const {
    auto it = std::lower_bound(alphabet.begin(), alphabet.end(), label);
    if (it == alphabet.end() || *it != label)
        return -1;
    return static_cast<int32_t>(it - alphabet.begin());
}

StateId Lts::successor(StateId state, int32_t alphabet_index) const {
    const auto& row = states[state];
    auto it = std::lower_bound(row.begin(), row.end(), alphabet_index,
                               [](const LtsTransition& t, int32_t l) { return t.label < l; });
    if (it == row.end() || it->label != alphabet_index)
        return kNoState;
    return it->target;
}

std::string Lts::state_name(StateId s) const {
    if (s >= 0 && static_cast<size_t>(s) < state_names.size() && !state_names[s].empty())
        return state_names[s];
    return std::to_string(s);
}

void validate(const Lts& lts) {
    if (!std::is_sorted(lts.alphabet.begin(), lts.alphabet.end()))
        throw ElaborationError("lts '" + lts.name + "': alphabet not in canonical order");
    if (std::adjacent_find(lts.alphabet.begin(), lts.alphabet.end()) != lts.alphabet.end())
        throw ElaborationError("lts '" + lts.name + "': duplicate alphabet entry");
    if (lts.states.empty())
        throw ElaborationError("lts '" + lts.name + "': no states");
    if (lts.initial < 0 || static_cast<size_t>(lts.initial) >= lts.states.size())
        throw ElaborationError("lts '" + lts.name + "': initial state out of range");
    if (lts.error_state != kNoState &&
        (lts.error_state < 0 || static_cast<size_t>(lts.error_state) >= lts.states.size()))
        throw ElaborationError("lts '" + lts.name + "': error state out of range");
    if (!lts.state_names.empty() && lts.state_names.size() != lts.states.size())
        throw ElaborationError("lts '" + lts.name + "': state name count mismatch");
    for (size_t s = 0; s < lts.states.size(); ++s) {
        const auto& row = lts.states[s];
        for (size_t i = 0; i < row.size(); ++i) {
            if (row[i].label < 0 || static_cast<size_t>(row[i].label) >= lts.alphabet.size())
                throw ElaborationError("lts '" + lts.name + "': transition label out of range");
            if (row[i].target < 0 || static_cast<size_t>(row[i].target) >= lts.states.size())
                throw ElaborationError("lts '" + lts.name + "': transition target out of range");
            if (i > 0 && row[i].label <= row[i - 1].label)
                throw ElaborationError("lts '" + lts.name + "': state " + std::to_string(s) +
                                          (row[i].label == row[i - 1].label
                                               ? " is nondeterministic on '" +
                                                     lts.alphabet[row[i].label].str() + "'"
                                               : " has unsorted transitions"));
        }
    }
    if (lts.error_state != kNoState && !lts.states[lts.error_state].empty())
        throw ElaborationError("lts '" + lts.name + "': error state must be a deadlock");
}

bool accepts_trace(const Lts& lts, std::span<const Label> trace) {
    StateId current = lts.initial;
    for (const Label& label : trace) {
        int32_t idx = lts.alphabet_index(label);
        if (idx < 0)
            return false;
        current = lts.successor(current, idx);
        if (current == kNoState)
            return false;
    }
    return true;
}

StateId LtsBuilder::state(const std::string& name) {
    auto it = std::lower_bound(index_.begin(), index_.end(), name,
                               [](const auto& entry, const std::string& n) { return entry.first < n; });
    if (it != index_.end() && it->first == name)
        return it->second;
    StateId id = static_cast<StateId>(names_.size());
    names_.push_back(name);
    index_.insert(it, {name, id});
    return id;
}

bool LtsBuilder::has_state(const std::string& name) const {
    auto it = std::lower_bound(index_.begin(), index_.end(), name,
                               [](const auto& entry, const std::string& n) { return entry.first < n; });
    return it != index_.end() && it->first == name;
}

void LtsBuilder::transition(StateId from, const Label& label, StateId to) {
    transitions_.push_back({from, label, to});
}

void LtsBuilder::alphabet_add(const Label& label) {
    extra_alphabet_.insert(label);
}

void LtsBuilder::mark_error(StateId s) {
    error_ = s;
}

Lts LtsBuilder::build(std::string lts_name, StateId initial) const {
    Lts lts;
    lts.name = std::move(lts_name);
    lts.state_names = names_;
    lts.initial = initial;
    lts.error_state = error_;

    LabelSet alphabet = extra_alphabet_;
    for (const auto& t : transitions_)
        alphabet.insert(t.label);
    lts.alphabet.assign(alphabet.begin(), alphabet.end());

    lts.states.resize(names_.size());
    for (const auto& t : transitions_) {
        int32_t idx = lts.alphabet_index(t.label);
        lts.states[t.from].push_back({idx, t.to});
    }
    for (size_t s = 0; s < lts.states.size(); ++s) {
        auto& row = lts.states[s];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        for (size_t i = 1; i < row.size(); ++i)
            if (row[i].label == row[i - 1].label)
                throw ElaborationError("lts '" + lts.name + "': state '" + names_[s] +
                                          "' is nondeterministic on '" +
                                          lts.alphabet[row[i].label].str() + "'");
    }
    validate(lts);
    return lts;
}

} // namespace dcs
