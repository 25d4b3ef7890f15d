#include "dcs/dot.hpp"

#include <ostream>

namespace dcs {

void write_dot(std::ostream& os, const Lts& lts) {
    os << "digraph \"" << lts.name << "\" {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=circle];\n";
    for (size_t s = 0; s < lts.n_states(); ++s) {
        os << "  n" << s << " [label=\"" << lts.state_name(static_cast<StateId>(s)) << '"';
        if (static_cast<StateId>(s) == lts.initial)
            os << ", shape=doublecircle";
        if (static_cast<StateId>(s) == lts.error_state)
            os << ", style=filled, fillcolor=lightgray";
        os << "];\n";
    }
    for (size_t s = 0; s < lts.n_states(); ++s)
        for (const LtsTransition& t : lts.states[s])
            os << "  n" << s << " -> n" << t.target << " [label=\""
               << lts.alphabet[t.label].str() << "\"];\n";
    os << "}\n";
}

} // namespace dcs
