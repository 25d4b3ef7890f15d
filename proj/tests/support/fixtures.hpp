#pragma once

#include <initializer_list>
#include <string>

#include "dcs/lts.hpp"
#include "dcs/problem.hpp"

namespace dcs::test {

inline Label L(const std::string& text) {
    return Label::parse(text);
}

inline LabelSet labels(std::initializer_list<const char*> names) {
    LabelSet out;
    for (const char* n : names)
        out.insert(Label::parse(n));
    return out;
}

// s0 -a-> s1, s0 -b-> s2, s1 -b-> s1, s2 -d-> s3
inline Lts make_ei() {
    LtsBuilder b;
    StateId s0 = b.state("s0"), s1 = b.state("s1"), s2 = b.state("s2"), s3 = b.state("s3");
    b.transition(s0, L("a"), s1);
    b.transition(s0, L("b"), s2);
    b.transition(s1, L("b"), s1);
    b.transition(s2, L("d"), s3);
    return b.build("EI", s0);
}

// t0 -a-> t1, t0 -c-> t2, t0 -d-> t0, t2 -d-> t1
inline Lts make_eii() {
    LtsBuilder b;
    StateId t0 = b.state("t0"), t1 = b.state("t1"), t2 = b.state("t2");
    b.transition(t0, L("a"), t1);
    b.transition(t0, L("c"), t2);
    b.transition(t0, L("d"), t0);
    b.transition(t2, L("d"), t1);
    return b.build("EII", t0);
}

inline ControlProblem ei_eii_problem(LabelSet controllable = labels({"a", "b", "c"}),
                                     LabelSet reach = labels({"d"}), LabelSet avoid = {}) {
    std::vector<Lts> comps;
    comps.push_back(make_ei());
    comps.push_back(make_eii());
    return ControlProblem(std::move(comps), std::move(controllable), std::move(reach),
                          std::move(avoid));
}

} // namespace dcs::test
