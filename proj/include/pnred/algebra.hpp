// Integer linear algebra over the effect matrix: generalized flow basis and
// transition-effect deduplication.
#pragma once

#include "pnred/net.hpp"

#include <cstdint>
#include <vector>

namespace pnred {

// A left integer null-space vector of We, normalized so the nonzero
// coefficients have gcd 1 and the leading one is positive. The constant is
// the invariant value deduced from the initial marking.
struct FlowVector {
    std::vector<std::pair<PlaceId, int64_t>> coeffs; // sorted by place, nonzero
    int64_t constant = 0;
    bool semiflow = false; // all coefficients nonnegative

    int64_t dot(const Marking& m) const;
};

// Basis of generalized flows; semi-flows sorted first.
std::vector<FlowVector> compute_flows(const SparseNet& net);

// Rank of the effect matrix, computed by the same elimination.
size_t effect_rank(const SparseNet& net);

struct EffectClasses {
    // For every transition index (dead ones map to themselves), the lowest
    // alive transition index with the same effect column.
    std::vector<TransId> representative;
    // Alive class representatives in ascending order with their members.
    std::vector<std::pair<TransId, std::vector<TransId>>> classes;
};

EffectClasses dedup_effects(const SparseNet& net);

} // namespace pnred
