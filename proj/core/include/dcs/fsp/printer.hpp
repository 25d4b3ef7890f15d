#pragma once

#include <string>

#include "dcs/fsp/ast.hpp"

namespace dcs::fsp {

// Canonical rendering of an AST; parse(print(ast)) is structurally equal
// to ast.
std::string print(const SpecAst& ast);
std::string print_expr(const ExprPtr& expr);

} // namespace dcs::fsp
