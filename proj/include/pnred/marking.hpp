// Sparse marking: place index -> token count, absent means zero.
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pnred {

using PlaceId = uint32_t;
using TransId = uint32_t;

class Marking {
public:
    using Entry = std::pair<PlaceId, uint64_t>;

    Marking() = default;
    explicit Marking(std::vector<Entry> entries);

    uint64_t get(PlaceId p) const;
    void set(PlaceId p, uint64_t count);
    void add(PlaceId p, int64_t delta); // delta may not push a count below zero

    const std::vector<Entry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    size_t support_size() const { return entries_.size(); }

    bool operator==(const Marking& o) const { return entries_ == o.entries_; }
    bool operator!=(const Marking& o) const { return !(*this == o); }
    bool operator<(const Marking& o) const { return entries_ < o.entries_; }

    // Canonical byte encoding used for hashing (sorted, zero-free pairs).
    std::string canonical_bytes() const;
    std::string to_string(const std::vector<std::string>* place_names = nullptr) const;

private:
    std::vector<Entry> entries_; // sorted by place, no zero counts
};

struct MarkingHash {
    size_t operator()(const Marking& m) const {
        // FNV-1a over the canonical pairs
        uint64_t h = 1469598103934665603ull;
        for (const auto& [p, c] : m.entries()) {
            auto mix = [&h](uint64_t v) {
                for (int i = 0; i < 8; ++i) {
                    h ^= (v >> (i * 8)) & 0xff;
                    h *= 1099511628211ull;
                }
            };
            mix(p);
            mix(c);
        }
        return static_cast<size_t>(h);
    }
};

} // namespace pnred
