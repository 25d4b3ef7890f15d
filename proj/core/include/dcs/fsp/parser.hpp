#pragma once

#include <string_view>

#include "dcs/fsp/ast.hpp"

namespace dcs::fsp {

// Parses the FSP subset (action prefix ->, choice |, when guards, index
// ranges, alphabet extension +{..}, parallel composites with forall, and
// the problem directive block). Throws ParseError with line/column and
// the expected tokens; also rejects duplicate definitions and unresolved
// process/local references.
SpecAst parse(std::string_view input);

} // namespace dcs::fsp
