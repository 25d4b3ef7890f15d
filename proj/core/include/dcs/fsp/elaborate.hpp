#pragma once

#include <map>
#include <optional>
#include <string>

#include "dcs/fsp/ast.hpp"
#include "dcs/problem.hpp"

namespace dcs::fsp {

using Bindings = std::map<std::string, int64_t>;

struct Elaboration {
    std::vector<Lts> components; // in composite order
    // Expanded directive sets (before alphabet intersection).
    LabelSet controllable, reach, avoid;
    std::string target; // composite that was instantiated
    // Present when the file carries problem directives; construction
    // checks the reach-set invariant.
    std::optional<ControlProblem> problem;
};

// Instantiates the target composite into concrete LTS components and the
// declared control problem. `bindings` seed and override constant
// definitions (CLI --param). Throws ElaborationError on unbound names,
// out-of-range indices, empty forall ranges and nondeterministic
// processes.
Elaboration elaborate(const SpecAst& ast, const Bindings& bindings = {});

} // namespace dcs::fsp
