#pragma once

#include <iosfwd>

#include "dcs/lts.hpp"

namespace dcs {

// Graphviz rendering of an LTS; the initial state is drawn with a double
// border, the ERROR state (if any) shaded.
void write_dot(std::ostream& os, const Lts& lts);

} // namespace dcs
