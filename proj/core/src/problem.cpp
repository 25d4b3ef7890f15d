#include "dcs/problem.hpp"

#include <algorithm>

#include "dcs/error.hpp"

namespace dcs {

SyncIndex::SyncIndex(std::vector<Lts> components) : components_(std::move(components)) {
    if (components_.empty())
        throw Error("E-ELAB", "component list is empty");
    LabelSet all;
    for (const auto& lts : components_) {
        validate(lts);
        all.insert(lts.alphabet.begin(), lts.alphabet.end());
    }
    alphabet_.assign(all.begin(), all.end());

    const size_t n_labels = alphabet_.size();
    participants_.resize(n_labels);
    local_index_.resize(components_.size());
    trans_.resize(components_.size());
    offsets_.resize(components_.size());

    for (size_t c = 0; c < components_.size(); ++c) {
        const Lts& lts = components_[c];
        offsets_[c] = static_cast<int32_t>(total_states_);
        total_states_ += lts.n_states();

        local_index_[c].assign(n_labels, -1);
        for (size_t li = 0; li < lts.alphabet.size(); ++li) {
            LabelId g = label_id(lts.alphabet[li]);
            local_index_[c][g] = static_cast<int32_t>(li);
            participants_[g].push_back(static_cast<int32_t>(c));
        }

        trans_[c].resize(lts.n_states());
        for (size_t s = 0; s < lts.n_states(); ++s) {
            auto& row = trans_[c][s];
            row.reserve(lts.states[s].size());
            for (const LtsTransition& t : lts.states[s])
                row.push_back({label_id(lts.alphabet[t.label]), t.target});
            std::sort(row.begin(), row.end());
        }
    }
}

LabelId SyncIndex::label_id(const Label& label) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), label);
    if (it == alphabet_.end() || *it != label)
        return -1;
    return static_cast<LabelId>(it - alphabet_.begin());
}

StateId SyncIndex::successor(size_t comp, StateId s, LabelId l) const {
    const auto& row = trans_[comp][s];
    auto it = std::lower_bound(row.begin(), row.end(), l,
                               [](const LtsTransition& t, LabelId lab) { return t.label < lab; });
    if (it == row.end() || it->label != l)
        return kNoState;
    return it->target;
}

CompositeState SyncIndex::initial_state() const {
    CompositeState cs(components_.size());
    for (size_t c = 0; c < components_.size(); ++c)
        cs[c] = components_[c].initial;
    return cs;
}

bool SyncIndex::valid_state(const CompositeState& cs) const {
    if (cs.size() != components_.size())
        return false;
    for (size_t c = 0; c < cs.size(); ++c)
        if (cs[c] < 0 || static_cast<size_t>(cs[c]) >= components_[c].n_states())
            return false;
    return true;
}

bool SyncIndex::composite_is_error(const CompositeState& cs) const {
    for (size_t c = 0; c < cs.size(); ++c)
        if (components_[c].error_state == cs[c])
            return true;
    return false;
}

void SyncIndex::enabled(const CompositeState& cs,
                        std::vector<std::pair<LabelId, CompositeState>>& out) const {
    out.clear();
    if (composite_is_error(cs))
        return;
    for (LabelId l = 0; l < static_cast<LabelId>(alphabet_.size()); ++l) {
        const auto& parts = participants_[l];
        bool ok = true;
        for (int32_t c : parts) {
            if (successor(c, cs[c], l) == kNoState) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        CompositeState succ = cs;
        for (int32_t c : parts)
            succ[c] = successor(c, cs[c], l);
        out.emplace_back(l, std::move(succ));
    }
}

std::vector<std::pair<LabelId, CompositeState>> SyncIndex::enabled(const CompositeState& cs) const {
    std::vector<std::pair<LabelId, CompositeState>> out;
    enabled(cs, out);
    return out;
}

const char* to_string(Classification c) {
    switch (c) {
    case Classification::Controllable: return "controllable";
    case Classification::Uncontrollable: return "uncontrollable";
    case Classification::Mixed: return "mixed";
    case Classification::Deadlock: return "deadlock";
    }
    return "?";
}

namespace {

std::vector<char> label_flags(const SyncIndex& index, const LabelSet& labels) {
    std::vector<char> flags(index.n_labels(), 0);
    for (const Label& l : labels) {
        LabelId id = index.label_id(l);
        if (id >= 0)
            flags[id] = 1;
    }
    return flags;
}

LabelSet restrict_to_alphabet(const SyncIndex& index, const LabelSet& labels) {
    LabelSet out;
    for (const Label& l : labels)
        if (index.label_id(l) >= 0)
            out.insert(l);
    return out;
}

} // namespace

ControlProblem::ControlProblem(std::vector<Lts> components, LabelSet controllable, LabelSet reach,
                               LabelSet avoid)
    : index_(std::move(components)) {
    controllable_set_ = restrict_to_alphabet(index_, controllable);
    reach_set_ = restrict_to_alphabet(index_, reach);
    avoid_set_ = restrict_to_alphabet(index_, avoid);
    if (reach_set_.empty())
        throw ElaborationError("reach set is empty (no label of the reach set occurs in any "
                               "component alphabet); the search needs a reachable objective");
    for (const Label& l : reach_set_)
        if (avoid_set_.count(l))
            throw ElaborationError("label '" + l.str() + "' is in both reach and avoid");
    controllable_ = label_flags(index_, controllable_set_);
    reach_ = label_flags(index_, reach_set_);
    avoid_ = label_flags(index_, avoid_set_);
}

std::vector<std::pair<LabelId, CompositeState>> enabled(const ControlProblem& problem,
                                                        const CompositeState& cs) {
    return problem.index().enabled(cs);
}

Classification classify(const ControlProblem& problem,
                        std::span<const std::pair<LabelId, CompositeState>> enabled_actions) {
    if (enabled_actions.empty())
        return Classification::Deadlock;
    bool any_ctrl = false, any_unc = false;
    for (const auto& [label, succ] : enabled_actions) {
        if (problem.is_controllable(label))
            any_ctrl = true;
        else
            any_unc = true;
    }
    if (any_ctrl && any_unc)
        return Classification::Mixed;
    return any_ctrl ? Classification::Controllable : Classification::Uncontrollable;
}

Classification classify(const ControlProblem& problem, const CompositeState& cs) {
    auto acts = enabled(problem, cs);
    return classify(problem, acts);
}

} // namespace dcs
