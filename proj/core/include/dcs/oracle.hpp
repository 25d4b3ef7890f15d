#pragma once

#include <string>

#include "dcs/compose.hpp"
#include "dcs/engine.hpp"
#include "dcs/problem.hpp"

namespace dcs {

// Ground-truth solution of the safety+reachability game on the explicit
// product, under the same mixed-as-uncontrollable rule as the engine. A
// product state is winning iff
//   - it has uncontrollable transitions and every one of them carries a
//     non-avoid label that either discharges (reach) or leads into the
//     winning set; or
//   - it has only controllable transitions and one of them does.
// Deadlocks lose. Computed as a least fixpoint.
struct GameSolution {
    Composition product;
    std::vector<char> winning;    // by product state id
    std::vector<LabelId> witness; // winning controllable states: chosen action; else -1
    bool initial_winning = false;

    size_t winning_count() const;
};

GameSolution solve_monolithic(const ControlProblem& problem, size_t cap = kDefaultComposeCap,
                              const Deadline& deadline = {});

struct Violation {
    enum class Kind { Avoid, Discharge, Blocking }; // (a), (b), (c)
    Kind kind;
    std::string message;
    std::vector<Label> witness; // trace from the initial closed-loop state
};

struct VerificationReport {
    bool ok = false;
    std::vector<Violation> violations;
    size_t closed_loop_states = 0; // pre-discharge region size
};

const char* to_string(Violation::Kind k);

// Model-checks the closed loop of the environment and a controller.
// Exploration stops at discharging (reach-labeled) transitions; within
// the pre-discharge region it checks that
//   (a) no avoid label can fire,
//   (b) every maximal path discharges: no deadlock, and no cycle over
//       non-reach transitions (a discharge-free path longer than the
//       region size would repeat a state),
//   (c) the controller never blocks an uncontrollable label the
//       environment enables — spontaneous discharges excepted, since a
//       reach label ends the obligation safely.
// Throws VerifyError if the controller alphabet is not a subset of the
// composition alphabet.
VerificationReport verify_controller(const ControlProblem& problem, const Lts& controller,
                                     size_t cap = kDefaultComposeCap);

} // namespace dcs
