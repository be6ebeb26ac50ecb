// Sparse place/transition net with column-sparse flow matrices and lazily
// maintained transposed (row) views. Discarded nodes are marked dead and
// keep their index until compact() renumbers.
#pragma once

#include "pnred/marking.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace pnred {

struct Arc {
    uint32_t node;   // place in a column, transition in a row view
    uint32_t weight; // > 0
    bool operator==(const Arc&) const = default;
};

using SparseVec = std::vector<Arc>; // sorted by node, no zero weights

uint32_t sparse_get(const SparseVec& v, uint32_t node);
void sparse_set(SparseVec& v, uint32_t node, uint32_t weight);
SparseVec sparse_scaled_sum(const SparseVec& a, const SparseVec& b, uint32_t kb);

class SparseNet {
public:
    PlaceId add_place(const std::string& name, uint64_t initial = 0);
    TransId add_transition(const std::string& name, SparseVec pre, SparseVec post);

    size_t place_count() const { return place_names_.size(); }      // includes dead
    size_t transition_count() const { return trans_names_.size(); } // includes dead
    size_t alive_place_count() const;
    size_t alive_transition_count() const;
    std::vector<PlaceId> alive_places() const;
    std::vector<TransId> alive_transitions() const;
    bool place_alive(PlaceId p) const { return place_alive_[p]; }
    bool transition_alive(TransId t) const { return trans_alive_[t]; }

    const SparseVec& pre(TransId t) const { return pre_[t]; }
    const SparseVec& post(TransId t) const { return post_[t]; }
    uint32_t pre_weight(PlaceId p, TransId t) const { return sparse_get(pre_[t], p); }
    uint32_t post_weight(PlaceId p, TransId t) const { return sparse_get(post_[t], p); }
    int64_t effect(PlaceId p, TransId t) const {
        return int64_t(post_weight(p, t)) - int64_t(pre_weight(p, t));
    }
    // Effect column of t as sparse signed pairs (zero-effect entries omitted).
    std::vector<std::pair<PlaceId, int64_t>> effect_column(TransId t) const;

    // Transposed views over alive transitions only.
    const SparseVec& consumers(PlaceId p) const; // t with W-(p,t) > 0
    const SparseVec& feeders(PlaceId p) const;   // t with W+(p,t) > 0

    void set_pre(TransId t, SparseVec v);
    void set_post(TransId t, SparseVec v);
    void add_post_weight(PlaceId p, TransId t, uint32_t delta);

    void discard_place(PlaceId p);           // erases the place's arcs everywhere
    void discard_transition(TransId t);

    const Marking& initial() const { return m0_; }
    void set_initial(Marking m);
    void set_initial_count(PlaceId p, uint64_t count);

    const std::string& place_name(PlaceId p) const { return place_names_[p]; }
    const std::string& transition_name(TransId t) const { return trans_names_[t]; }
    std::optional<PlaceId> find_place(const std::string& name) const;
    std::optional<TransId> find_transition(const std::string& name) const;

    // Renumbers alive nodes densely; optional maps give old index -> new (-1 if dead).
    SparseNet compact(std::vector<int32_t>* place_map = nullptr,
                      std::vector<int32_t>* trans_map = nullptr) const;

    // Structural equality on alive nodes, matched by name.
    bool same_structure(const SparseNet& other) const;

    std::string to_string() const;

private:
    void refresh_views() const;

    std::vector<std::string> place_names_;
    std::vector<std::string> trans_names_;
    std::vector<SparseVec> pre_;  // per transition: (place, weight)
    std::vector<SparseVec> post_;
    std::vector<uint8_t> place_alive_;
    std::vector<uint8_t> trans_alive_;
    Marking m0_;
    std::unordered_map<std::string, PlaceId> place_index_;
    std::unordered_map<std::string, TransId> trans_index_;

    mutable std::vector<SparseVec> consumers_; // per place: (transition, W-)
    mutable std::vector<SparseVec> feeders_;   // per place: (transition, W+)
    mutable bool views_dirty_ = true;
};

// Firing semantics.
bool enabled(const Marking& m, TransId t, const SparseNet& net);
Marking fire(const Marking& m, TransId t, const SparseNet& net); // throws if disabled

} // namespace pnred
