// Explicit-state brute-force reachability checker; the test backbone used to
// judge every rule and verdict at small scale.
#pragma once

#include "pnred/net.hpp"
#include "pnred/property.hpp"

#include <string>
#include <vector>

namespace pnred::oracle {

struct Enumeration {
    std::vector<Marking> states;    // reachable markings (set, no order guarantee)
    std::vector<Marking> deadlocks; // states with no enabled transition
    bool capped = false;            // cap was hit; results incomplete
};

Enumeration enumerate(const SparseNet& net, size_t state_cap = 1'000'000);

// True iff every enumerated marking satisfies the invariant.
// Throws std::runtime_error if the cap is exceeded.
bool holds_invariant(const SparseNet& net, const BoolExpr& invariant,
                     size_t state_cap = 1'000'000);

enum class Mode { Safety, Deadlock };

// Safety: reachable markings projected onto the named support places are
// equal as sets. Deadlock: both nets agree on "has a reachable deadlock".
// Support names must resolve in both nets.
bool equivalent(const SparseNet& original, const SparseNet& reduced,
                const std::vector<std::string>& support_names, Mode mode,
                size_t state_cap = 1'000'000);

} // namespace pnred::oracle
