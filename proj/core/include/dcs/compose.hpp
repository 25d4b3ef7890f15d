#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

#include "dcs/problem.hpp"

namespace dcs {

using Deadline = std::optional<std::chrono::steady_clock::time_point>;

// Throws CapacityError("timeout") once the deadline has passed.
void check_deadline(const Deadline& deadline);

constexpr size_t kDefaultComposeCap = 10'000'000;

// Explicit reachable parallel composition. Product states are numbered
// in BFS discovery order from the initial composite state; `states`
// maps each product id back to its composite state.
struct Composition {
    Lts lts;
    std::vector<CompositeState> states;

    StateId find(const CompositeState& cs) const; // kNoState if unreachable
};

// Throws CapacityError("state-space too large ...") beyond `cap` states.
Composition compose_full(const SyncIndex& index, size_t cap = kDefaultComposeCap,
                         const Deadline& deadline = {});
Composition compose_full(const ControlProblem& problem, size_t cap = kDefaultComposeCap,
                         const Deadline& deadline = {});

} // namespace dcs
