#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "catalog.hpp"
#include "pnred/algebra.hpp"
#include "pnred/oracle.hpp"

using namespace pnred;
using namespace testutil;

static bool flow_kills_effects(const FlowVector& f, const SparseNet& net) {
    for (TransId t : net.alive_transitions()) {
        int64_t dot = 0;
        for (const auto& [p, c] : f.coeffs) dot += c * net.effect(p, t);
        if (dot != 0) return false;
    }
    return true;
}

TEST_CASE("flows of NET-LOOP and NET-LINE") {
    SparseNet loop = net_loop();
    auto flows = compute_flows(loop);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].coeffs ==
          std::vector<std::pair<PlaceId, int64_t>>{{*loop.find_place("a"), 1},
                                                   {*loop.find_place("b"), 1}});
    CHECK(flows[0].constant == 1);
    CHECK(flows[0].semiflow);

    SparseNet line = net_line();
    auto lf = compute_flows(line);
    REQUIRE(lf.size() == 1);
    CHECK(lf[0].coeffs.size() == 3);
    for (auto& [p, c] : lf[0].coeffs) CHECK(c == 1);
    CHECK(lf[0].constant == 1);
}

TEST_CASE("weighted net flow is normalized") {
    SparseNet net = make_net({"t: a -> 2b"}, "{a:3, b:1}");
    auto flows = compute_flows(net);
    REQUIRE(flows.size() == 1);
    CHECK(flows[0].coeffs ==
          std::vector<std::pair<PlaceId, int64_t>>{{*net.find_place("a"), 2},
                                                   {*net.find_place("b"), 1}});
    CHECK(flows[0].constant == 2 * 3 + 1);
    CHECK(flow_kills_effects(flows[0], net));
}

TEST_CASE("every computed flow annihilates We on catalog and random nets") {
    std::vector<SparseNet> nets = {net_line(), net_loop(), net_borrow(),
                                   net_fork(), net_dup(),    net_siphon()};
    for (const auto& extra : catalog_random_nets()) nets.push_back(extra.compact());
    for (const SparseNet& net : nets) {
        for (const FlowVector& f : compute_flows(net)) {
            CHECK(flow_kills_effects(f, net));
            int64_t g = 0;
            for (auto& [p, c] : f.coeffs) g = std::gcd(g, c);
            CHECK(g == 1);
            CHECK(f.coeffs.front().second > 0);
        }
    }
}

TEST_CASE("flow values are invariant over all reachable markings") {
    std::vector<SparseNet> nets = {net_line(), net_loop(), net_borrow(),
                                   net_fork(), net_dup(),    net_siphon()};
    for (const auto& extra : catalog_random_nets()) nets.push_back(extra.compact());
    for (const SparseNet& net : nets) {
        auto flows = compute_flows(net);
        auto e = oracle::enumerate(net, 200000);
        REQUIRE_FALSE(e.capped);
        for (const FlowVector& f : flows)
            for (const Marking& m : e.states) CHECK(f.dot(m) == f.constant);
    }
}

TEST_CASE("fire preserves flow values") {
    for (SparseNet net : {net_line(), net_loop(), net_borrow(), net_fork(), net_dup()}) {
        auto flows = compute_flows(net);
        auto e = oracle::enumerate(net);
        for (const Marking& m : e.states)
            for (TransId t : net.alive_transitions()) {
                if (!enabled(m, t, net)) continue;
                Marking next = fire(m, t, net);
                for (const FlowVector& f : flows) CHECK(f.dot(next) == f.dot(m));
            }
    }
}

TEST_CASE("basis completeness: |flows| = |P| - rank(We)") {
    std::vector<SparseNet> nets = {net_line(), net_loop(), net_borrow(), net_fork(),
                                   net_dup(),  net_siphon()};
    for (const auto& extra : catalog_random_nets()) nets.push_back(extra.compact());
    for (const SparseNet& net : nets) {
        auto flows = compute_flows(net);
        CHECK(flows.size() == net.alive_place_count() - effect_rank(net));
        CHECK(flows.size() <= net.alive_place_count());
    }
}

TEST_CASE("semi-flows sort before generalized flows") {
    // a + p and a + q are conserved; p - q is a generalized flow direction.
    SparseNet net = make_net({"t1: a->p+q", "t2: p+q->a"}, "{a:1}");
    auto flows = compute_flows(net);
    REQUIRE(flows.size() == 2);
    bool seen_general = false;
    for (const auto& f : flows) {
        if (!f.semiflow) seen_general = true;
        if (f.semiflow) CHECK_FALSE(seen_general);
    }
}

TEST_CASE("dedup_effects groups transitions by effect column") {
    SparseNet dup = net_dup();
    auto classes = dedup_effects(dup);
    CHECK(classes.classes.size() == 2); // a->b and 2a->2b differ

    SparseNet reads = make_net({"t: a->b", "u: a+c->b+c"}, "{a:1, c:1}");
    auto rc = dedup_effects(reads);
    CHECK(rc.classes.size() == 1); // reads cancel in We
    CHECK(rc.representative[*reads.find_transition("u")] == *reads.find_transition("t"));

    for (auto& net : catalog_random_nets()) {
        auto c = dedup_effects(net);
        CHECK(c.classes.size() <= net.alive_transition_count());
    }
}

TEST_CASE("flow coefficients beyond 64 bits are rejected, not wrapped") {
    // Chained doublings: the single basis flow needs a 2^80 coefficient.
    NetBuilder b;
    std::vector<PlaceId> ps;
    const int n = 80;
    for (int i = 0; i <= n; ++i) ps.push_back(b.place("p" + std::to_string(i)));
    for (int i = 0; i < n; ++i) {
        SparseVec pre{{ps[i], 1}};
        SparseVec post{{ps[i + 1], 2}};
        b.net.add_transition("t" + std::to_string(i), std::move(pre), std::move(post));
    }
    CHECK_THROWS(compute_flows(b.net));
}
