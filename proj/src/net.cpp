#include "pnred/net.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pnred {

Marking::Marking(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                  [](const Entry& e) { return e.second == 0; }),
                   entries_.end());
}

uint64_t Marking::get(PlaceId p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, PlaceId q) { return e.first < q; });
    return (it != entries_.end() && it->first == p) ? it->second : 0;
}

void Marking::set(PlaceId p, uint64_t count) {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, PlaceId q) { return e.first < q; });
    if (it != entries_.end() && it->first == p) {
        if (count == 0)
            entries_.erase(it);
        else
            it->second = count;
    } else if (count != 0) {
        entries_.insert(it, {p, count});
    }
}

void Marking::add(PlaceId p, int64_t delta) {
    int64_t v = int64_t(get(p)) + delta;
    if (v < 0)
        throw std::logic_error("marking count would become negative");
    set(p, uint64_t(v));
}

std::string Marking::canonical_bytes() const {
    std::string out;
    out.reserve(entries_.size() * 16);
    for (const auto& [p, c] : entries_) {
        for (int i = 0; i < 4; ++i) out.push_back(char((p >> (8 * i)) & 0xff));
        for (int i = 0; i < 8; ++i) out.push_back(char((c >> (8 * i)) & 0xff));
    }
    return out;
}

std::string Marking::to_string(const std::vector<std::string>* place_names) const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    for (const auto& [p, c] : entries_) {
        if (!first) os << ", ";
        first = false;
        if (place_names && p < place_names->size())
            os << (*place_names)[p];
        else
            os << 'p' << p;
        os << ':' << c;
    }
    os << '}';
    return os.str();
}

uint32_t sparse_get(const SparseVec& v, uint32_t node) {
    auto it = std::lower_bound(v.begin(), v.end(), node,
                               [](const Arc& a, uint32_t n) { return a.node < n; });
    return (it != v.end() && it->node == node) ? it->weight : 0;
}

void sparse_set(SparseVec& v, uint32_t node, uint32_t weight) {
    auto it = std::lower_bound(v.begin(), v.end(), node,
                               [](const Arc& a, uint32_t n) { return a.node < n; });
    if (it != v.end() && it->node == node) {
        if (weight == 0)
            v.erase(it);
        else
            it->weight = weight;
    } else if (weight != 0) {
        v.insert(it, Arc{node, weight});
    }
}

SparseVec sparse_scaled_sum(const SparseVec& a, const SparseVec& b, uint32_t kb) {
    SparseVec out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].node < b[j].node)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].node < a[i].node) {
            out.push_back(Arc{b[j].node, b[j].weight * kb});
            ++j;
        } else {
            out.push_back(Arc{a[i].node, a[i].weight + b[j].weight * kb});
            ++i, ++j;
        }
    }
    return out;
}

PlaceId SparseNet::add_place(const std::string& name, uint64_t initial) {
    if (place_index_.count(name))
        throw std::invalid_argument("duplicate place name: " + name);
    PlaceId p = PlaceId(place_names_.size());
    place_names_.push_back(name);
    place_alive_.push_back(1);
    place_index_[name] = p;
    if (initial) m0_.set(p, initial);
    views_dirty_ = true;
    return p;
}

TransId SparseNet::add_transition(const std::string& name, SparseVec pre, SparseVec post) {
    if (trans_index_.count(name))
        throw std::invalid_argument("duplicate transition name: " + name);
    for (const auto* col : {&pre, &post})
        for (const Arc& a : *col)
            if (a.node >= place_names_.size() || a.weight == 0)
                throw std::invalid_argument("bad arc in transition " + name);
    TransId t = TransId(trans_names_.size());
    trans_names_.push_back(name);
    trans_alive_.push_back(1);
    trans_index_[name] = t;
    pre_.push_back(std::move(pre));
    post_.push_back(std::move(post));
    views_dirty_ = true;
    return t;
}

size_t SparseNet::alive_place_count() const {
    size_t n = 0;
    for (auto a : place_alive_) n += a;
    return n;
}

size_t SparseNet::alive_transition_count() const {
    size_t n = 0;
    for (auto a : trans_alive_) n += a;
    return n;
}

std::vector<PlaceId> SparseNet::alive_places() const {
    std::vector<PlaceId> out;
    for (PlaceId p = 0; p < place_alive_.size(); ++p)
        if (place_alive_[p]) out.push_back(p);
    return out;
}

std::vector<TransId> SparseNet::alive_transitions() const {
    std::vector<TransId> out;
    for (TransId t = 0; t < trans_alive_.size(); ++t)
        if (trans_alive_[t]) out.push_back(t);
    return out;
}

std::vector<std::pair<PlaceId, int64_t>> SparseNet::effect_column(TransId t) const {
    std::vector<std::pair<PlaceId, int64_t>> out;
    const SparseVec& a = pre_[t];
    const SparseVec& b = post_[t];
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].node < b[j].node)) {
            out.emplace_back(a[i].node, -int64_t(a[i].weight));
            ++i;
        } else if (i == a.size() || b[j].node < a[i].node) {
            out.emplace_back(b[j].node, int64_t(b[j].weight));
            ++j;
        } else {
            int64_t d = int64_t(b[j].weight) - int64_t(a[i].weight);
            if (d != 0) out.emplace_back(a[i].node, d);
            ++i, ++j;
        }
    }
    return out;
}

void SparseNet::refresh_views() const {
    if (!views_dirty_) return;
    consumers_.assign(place_names_.size(), {});
    feeders_.assign(place_names_.size(), {});
    for (TransId t = 0; t < trans_names_.size(); ++t) {
        if (!trans_alive_[t]) continue;
        for (const Arc& a : pre_[t]) consumers_[a.node].push_back(Arc{t, a.weight});
        for (const Arc& a : post_[t]) feeders_[a.node].push_back(Arc{t, a.weight});
    }
    views_dirty_ = false;
}

const SparseVec& SparseNet::consumers(PlaceId p) const {
    refresh_views();
    return consumers_[p];
}

const SparseVec& SparseNet::feeders(PlaceId p) const {
    refresh_views();
    return feeders_[p];
}

void SparseNet::set_pre(TransId t, SparseVec v) {
    pre_[t] = std::move(v);
    views_dirty_ = true;
}

void SparseNet::set_post(TransId t, SparseVec v) {
    post_[t] = std::move(v);
    views_dirty_ = true;
}

void SparseNet::add_post_weight(PlaceId p, TransId t, uint32_t delta) {
    sparse_set(post_[t], p, post_weight(p, t) + delta);
    views_dirty_ = true;
}

void SparseNet::discard_place(PlaceId p) {
    if (!place_alive_[p]) return;
    place_alive_[p] = 0;
    for (TransId t = 0; t < trans_names_.size(); ++t) {
        if (!trans_alive_[t]) continue;
        sparse_set(pre_[t], p, 0);
        sparse_set(post_[t], p, 0);
    }
    m0_.set(p, 0);
    views_dirty_ = true;
}

void SparseNet::discard_transition(TransId t) {
    if (!trans_alive_[t]) return;
    trans_alive_[t] = 0;
    pre_[t].clear();
    post_[t].clear();
    views_dirty_ = true;
}

void SparseNet::set_initial(Marking m) {
    m0_ = std::move(m);
}

void SparseNet::set_initial_count(PlaceId p, uint64_t count) {
    m0_.set(p, count);
}

std::optional<PlaceId> SparseNet::find_place(const std::string& name) const {
    auto it = place_index_.find(name);
    if (it == place_index_.end() || !place_alive_[it->second]) return std::nullopt;
    return it->second;
}

std::optional<TransId> SparseNet::find_transition(const std::string& name) const {
    auto it = trans_index_.find(name);
    if (it == trans_index_.end() || !trans_alive_[it->second]) return std::nullopt;
    return it->second;
}

SparseNet SparseNet::compact(std::vector<int32_t>* place_map,
                             std::vector<int32_t>* trans_map) const {
    SparseNet out;
    std::vector<int32_t> pmap(place_names_.size(), -1);
    std::vector<int32_t> tmap(trans_names_.size(), -1);
    for (PlaceId p = 0; p < place_names_.size(); ++p)
        if (place_alive_[p]) pmap[p] = int32_t(out.add_place(place_names_[p], m0_.get(p)));
    for (TransId t = 0; t < trans_names_.size(); ++t) {
        if (!trans_alive_[t]) continue;
        SparseVec pre, post;
        for (const Arc& a : pre_[t]) pre.push_back(Arc{uint32_t(pmap[a.node]), a.weight});
        for (const Arc& a : post_[t]) post.push_back(Arc{uint32_t(pmap[a.node]), a.weight});
        tmap[t] = int32_t(out.add_transition(trans_names_[t], std::move(pre), std::move(post)));
    }
    if (place_map) *place_map = std::move(pmap);
    if (trans_map) *trans_map = std::move(tmap);
    return out;
}

bool SparseNet::same_structure(const SparseNet& other) const {
    if (alive_place_count() != other.alive_place_count()) return false;
    if (alive_transition_count() != other.alive_transition_count()) return false;
    for (PlaceId p = 0; p < place_names_.size(); ++p) {
        if (!place_alive_[p]) continue;
        auto q = other.find_place(place_names_[p]);
        if (!q) return false;
        if (m0_.get(p) != other.m0_.get(*q)) return false;
    }
    for (TransId t = 0; t < trans_names_.size(); ++t) {
        if (!trans_alive_[t]) continue;
        auto u = other.find_transition(trans_names_[t]);
        if (!u) return false;
        auto column_equal = [&](const SparseVec& mine, const SparseVec& theirs) {
            if (mine.size() != theirs.size()) return false;
            for (const Arc& a : mine) {
                auto q = other.find_place(place_names_[a.node]);
                if (!q || sparse_get(theirs, *q) != a.weight) return false;
            }
            return true;
        };
        if (!column_equal(pre_[t], other.pre_[*u])) return false;
        if (!column_equal(post_[t], other.post_[*u])) return false;
    }
    return true;
}

std::string SparseNet::to_string() const {
    std::ostringstream os;
    for (TransId t = 0; t < trans_names_.size(); ++t) {
        if (!trans_alive_[t]) continue;
        os << trans_names_[t] << ": ";
        bool first = true;
        for (const Arc& a : pre_[t]) {
            if (!first) os << " + ";
            first = false;
            if (a.weight != 1) os << a.weight << '*';
            os << place_names_[a.node];
        }
        if (first) os << "0";
        os << " -> ";
        first = true;
        for (const Arc& a : post_[t]) {
            if (!first) os << " + ";
            first = false;
            if (a.weight != 1) os << a.weight << '*';
            os << place_names_[a.node];
        }
        if (first) os << "0";
        os << '\n';
    }
    os << "m0 = " << m0_.to_string(&place_names_) << '\n';
    return os.str();
}

bool enabled(const Marking& m, TransId t, const SparseNet& net) {
    for (const Arc& a : net.pre(t))
        if (m.get(a.node) < a.weight) return false;
    return true;
}

Marking fire(const Marking& m, TransId t, const SparseNet& net) {
    if (!enabled(m, t, net))
        throw std::logic_error("fired a disabled transition: " + net.transition_name(t));
    Marking out = m;
    for (const Arc& a : net.pre(t)) out.add(a.node, -int64_t(a.weight));
    for (const Arc& a : net.post(t)) out.add(a.node, int64_t(a.weight));
    return out;
}

} // namespace pnred
