#pragma once

#include <iosfwd>
#include <string>

#include "dcs/lts.hpp"

namespace dcs {

// Aldebaran .aut interchange:
//   des (initial,#transitions,#states)
//   (from,"label",to)
// Transitions are written grouped by source state, within a source in
// canonical label order, so equal automata serialize byte-identically.
void write_aut(std::ostream& os, const Lts& lts);
std::string to_aut(const Lts& lts);

// Accepts liberal whitespace; rejects nondeterministic input.
Lts read_aut(std::istream& is, const std::string& name = "aut");
Lts read_aut_file(const std::string& path);

} // namespace dcs
