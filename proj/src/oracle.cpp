#include "pnred/oracle.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace pnred::oracle {

Enumeration enumerate(const SparseNet& net, size_t state_cap) {
    Enumeration out;
    std::unordered_set<Marking, MarkingHash> seen;
    std::deque<Marking> frontier;
    std::vector<TransId> trans = net.alive_transitions();

    seen.insert(net.initial());
    frontier.push_back(net.initial());
    while (!frontier.empty()) {
        Marking m = std::move(frontier.front());
        frontier.pop_front();
        bool dead = true;
        for (TransId t : trans) {
            if (!enabled(m, t, net)) continue;
            dead = false;
            Marking next = fire(m, t, net);
            if (seen.insert(next).second) {
                if (seen.size() > state_cap) {
                    out.capped = true;
                    out.states.assign(seen.begin(), seen.end());
                    return out;
                }
                frontier.push_back(std::move(next));
            }
        }
        if (dead) out.deadlocks.push_back(m);
    }
    out.states.assign(seen.begin(), seen.end());
    return out;
}

bool holds_invariant(const SparseNet& net, const BoolExpr& invariant, size_t state_cap) {
    Enumeration e = enumerate(net, state_cap);
    if (e.capped) throw std::runtime_error("oracle state cap exceeded");
    for (const Marking& m : e.states)
        if (!invariant.eval(m)) return false;
    return true;
}

static Marking project(const Marking& m, const std::vector<PlaceId>& places) {
    Marking out;
    for (size_t i = 0; i < places.size(); ++i) {
        uint64_t c = m.get(places[i]);
        if (c) out.set(PlaceId(i), c);
    }
    return out;
}

bool equivalent(const SparseNet& original, const SparseNet& reduced,
                const std::vector<std::string>& support_names, Mode mode,
                size_t state_cap) {
    Enumeration ea = enumerate(original, state_cap);
    Enumeration eb = enumerate(reduced, state_cap);
    if (ea.capped || eb.capped) throw std::runtime_error("oracle state cap exceeded");

    if (mode == Mode::Deadlock)
        return ea.deadlocks.empty() == eb.deadlocks.empty();

    std::vector<PlaceId> pa, pb;
    for (const std::string& name : support_names) {
        auto a = original.find_place(name);
        auto b = reduced.find_place(name);
        if (!a || !b)
            throw std::invalid_argument("support place missing for projection: " + name);
        pa.push_back(*a);
        pb.push_back(*b);
    }
    std::unordered_set<Marking, MarkingHash> sa, sb;
    for (const Marking& m : ea.states) sa.insert(project(m, pa));
    for (const Marking& m : eb.states) sb.insert(project(m, pb));
    return sa == sb;
}

} // namespace pnred::oracle
