// Shared test fixtures: the fixed net catalog, a tiny textual net builder,
// and seeded random net generation.
#pragma once

#include "pnred/net.hpp"
#include "pnred/oracle.hpp"
#include "pnred/property.hpp"

#include <cctype>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

using namespace pnred;

// Builds a net from lines like "t1: 2a + b -> c" plus a marking literal
// "{a:1, b:2}". Places register in order of first appearance.
class NetBuilder {
public:
    SparseNet net;

    PlaceId place(const std::string& name) {
        if (auto p = net.find_place(name)) return *p;
        return net.add_place(name);
    }

    void transition(const std::string& line) {
        size_t colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("missing ':' in " + line);
        std::string name = trim(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        size_t arrow = rest.find("->");
        if (arrow == std::string::npos) throw std::invalid_argument("missing '->' in " + line);
        SparseVec pre = parse_side(rest.substr(0, arrow));
        SparseVec post = parse_side(rest.substr(arrow + 2));
        net.add_transition(name, std::move(pre), std::move(post));
    }

    void marking(const std::string& literal) {
        Marking m;
        size_t i = 0;
        auto skip = [&] { while (i < literal.size() && std::isspace((unsigned char)literal[i])) ++i; };
        skip();
        if (i >= literal.size() || literal[i] != '{')
            throw std::invalid_argument("marking must start with '{'");
        ++i;
        while (true) {
            skip();
            if (i < literal.size() && literal[i] == '}') break;
            size_t j = i;
            while (j < literal.size() && (std::isalnum((unsigned char)literal[j]) || literal[j] == '_')) ++j;
            std::string name = literal.substr(i, j - i);
            if (name.empty()) throw std::invalid_argument("bad marking literal");
            i = j;
            skip();
            if (i >= literal.size() || literal[i] != ':') throw std::invalid_argument("expected ':'");
            ++i;
            skip();
            uint64_t count = 0;
            while (i < literal.size() && std::isdigit((unsigned char)literal[i]))
                count = count * 10 + uint64_t(literal[i++] - '0');
            m.set(place(name), count);
            skip();
            if (i < literal.size() && literal[i] == ',') ++i;
        }
        net.set_initial(std::move(m));
    }

private:
    static std::string trim(const std::string& s) {
        size_t a = s.find_first_not_of(" \t");
        size_t b = s.find_last_not_of(" \t");
        return a == std::string::npos ? "" : s.substr(a, b - a + 1);
    }

    SparseVec parse_side(const std::string& side) {
        SparseVec out;
        size_t i = 0;
        auto skip = [&] { while (i < side.size() && std::isspace((unsigned char)side[i])) ++i; };
        while (true) {
            skip();
            if (i >= side.size()) break;
            uint32_t w = 1;
            if (std::isdigit((unsigned char)side[i])) {
                w = 0;
                while (i < side.size() && std::isdigit((unsigned char)side[i]))
                    w = w * 10 + uint32_t(side[i++] - '0');
                skip();
                if (i < side.size() && side[i] == '*') { ++i; skip(); }
            }
            size_t j = i;
            while (j < side.size() && (std::isalnum((unsigned char)side[j]) || side[j] == '_')) ++j;
            std::string name = side.substr(i, j - i);
            if (name.empty()) break; // empty side: no arcs
            i = j;
            PlaceId p = place(name);
            sparse_set(out, p, sparse_get(out, p) + w);
            skip();
            if (i < side.size() && side[i] == '+') ++i;
        }
        return out;
    }
};

inline SparseNet make_net(const std::vector<std::string>& transitions,
                          const std::string& marking = "{}") {
    NetBuilder b;
    for (const auto& line : transitions) b.transition(line);
    b.marking(marking);
    return std::move(b.net);
}

// The fixed catalog (see repo docs): tiny nets exercising every behavior class.
inline SparseNet net_line() { return make_net({"t1: a->b", "t2: b->c"}, "{a:1}"); }
inline SparseNet net_loop() { return make_net({"t1: a->b", "t2: b->a"}, "{a:1}"); }
inline SparseNet net_borrow() {
    return make_net({"t1: a->b", "t2: b->a", "t3: b->b+c"}, "{}");
}
inline SparseNet net_fork() { return make_net({"tf: a->p+q", "tj: p+q->r"}, "{a:1}"); }
inline SparseNet net_dup() { return make_net({"t1: a->b", "t2: 2a->2b"}, "{a:2}"); }
inline SparseNet net_siphon() { return make_net({"t1: b->a"}, "{a:1}"); }

// Irreducible net whose one open property is only decided after the SMT
// rules discard the implicit place q, unblocking an agglomeration.
inline SparseNet net_stuck() {
    return make_net({"t1: 2a -> p + 2q",
                     "t2: p + q -> b",
                     "tu1: b + gate -> gate + win",
                     "tu2: b + 2gate2 -> 2gate2 + win",
                     "tf: win -> gate",
                     "tf2: win -> gate2"},
                    "{a:3, q:1, gate2:1}");
}

inline Property invariant_prop(const std::string& name, Atom atom) {
    Property prop;
    prop.name = name;
    prop.invariant = BoolExpr::make_atom(std::move(atom));
    return prop;
}

// invariant "m(place) = 0"
inline PropertySet zero_invariant(const SparseNet& net, const std::string& place_name) {
    Atom a;
    a.coeffs = {{*net.find_place(place_name), 1}};
    a.op = CmpOp::Eq;
    a.rhs = 0;
    PropertySet ps;
    ps.items.push_back(invariant_prop("inv_" + place_name, std::move(a)));
    return ps;
}

struct RandomNetOptions {
    uint32_t max_places = 10;
    uint32_t max_transitions = 12;
    uint32_t max_weight = 3;
    uint32_t max_tokens = 4;
};

inline SparseNet random_net(uint64_t seed, const RandomNetOptions& opt = {}) {
    std::mt19937_64 rng(seed);
    auto pick = [&](uint32_t lo, uint32_t hi) { return lo + uint32_t(rng() % (hi - lo + 1)); };
    uint32_t np = pick(2, opt.max_places);
    uint32_t nt = pick(1, opt.max_transitions);
    NetBuilder b;
    std::vector<PlaceId> places;
    for (uint32_t i = 0; i < np; ++i) places.push_back(b.place("p" + std::to_string(i)));
    for (uint32_t i = 0; i < nt; ++i) {
        SparseVec pre, post;
        uint32_t nin = pick(0, 3), nout = pick(0, 3);
        if (nin == 0 && nout == 0) nin = 1;
        for (uint32_t k = 0; k < nin; ++k) {
            PlaceId p = places[rng() % np];
            sparse_set(pre, p, sparse_get(pre, p) + pick(1, opt.max_weight));
        }
        for (uint32_t k = 0; k < nout; ++k) {
            PlaceId p = places[rng() % np];
            sparse_set(post, p, sparse_get(post, p) + pick(1, opt.max_weight));
        }
        b.net.add_transition("t" + std::to_string(i), std::move(pre), std::move(post));
    }
    Marking m0;
    uint32_t tokens = pick(1, opt.max_tokens);
    for (uint32_t k = 0; k < tokens; ++k) {
        PlaceId p = places[rng() % np];
        m0.set(p, m0.get(p) + 1);
    }
    b.net.set_initial(std::move(m0));
    return std::move(b.net);
}

// Deterministically perturbs the seed until the net's state space fits the cap.
inline SparseNet bounded_random_net(uint64_t seed, const RandomNetOptions& opt = {},
                                    size_t cap = 20'000) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        uint64_t s = seed + uint64_t(attempt) * 0x9e3779b97f4a7c15ull;
        SparseNet net = random_net(s, opt);
        auto e = oracle::enumerate(net, cap);
        if (!e.capped) return net;
    }
    throw std::runtime_error("no bounded random net for seed " + std::to_string(seed));
}

// The ten fixed catalog random nets used across suites.
inline const std::vector<SparseNet>& catalog_random_nets() {
    static const std::vector<SparseNet> nets = [] {
        std::vector<SparseNet> out;
        for (uint64_t seed = 1; seed <= 10; ++seed)
            out.push_back(bounded_random_net(seed * 101));
        return out;
    }();
    return nets;
}

inline std::vector<std::string> alive_place_names(const SparseNet& net) {
    std::vector<std::string> out;
    for (PlaceId p : net.alive_places()) out.push_back(net.place_name(p));
    return out;
}

} // namespace testutil
