#include "pnred/algebra.hpp"

#include <algorithm>
#include <gmpxx.h>
#include <map>
#include <numeric>
#include <stdexcept>

namespace pnred {

int64_t FlowVector::dot(const Marking& m) const {
    __int128 sum = 0;
    for (const auto& [p, c] : coeffs) sum += __int128(c) * __int128(m.get(p));
    if (sum > INT64_MAX || sum < INT64_MIN)
        throw std::overflow_error("flow dot product exceeds 64 bits");
    return int64_t(sum);
}

namespace {

struct Overflow {};

// int64 arithmetic that escalates to the arbitrary-precision path on overflow
struct Checked64 {
    int64_t v = 0;
    Checked64() = default;
    Checked64(int64_t x) : v(x) {}
    friend Checked64 operator+(Checked64 a, Checked64 b) {
        int64_t r;
        if (__builtin_add_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend Checked64 operator-(Checked64 a, Checked64 b) {
        int64_t r;
        if (__builtin_sub_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend Checked64 operator*(Checked64 a, Checked64 b) {
        int64_t r;
        if (__builtin_mul_overflow(a.v, b.v, &r)) throw Overflow{};
        return r;
    }
    friend Checked64 operator/(Checked64 a, Checked64 b) { return a.v / b.v; }
    friend bool operator==(Checked64 a, int64_t b) { return a.v == b; }
    friend bool operator<(Checked64 a, int64_t b) { return a.v < b; }
};

Checked64 abs_val(Checked64 a) {
    if (a.v == INT64_MIN) throw Overflow{};
    return a.v < 0 ? -a.v : a.v;
}
mpz_class abs_val(const mpz_class& a) { return abs(a); }
Checked64 gcd_val(Checked64 a, Checked64 b) { return int64_t(std::gcd(a.v, b.v)); }
mpz_class gcd_val(const mpz_class& a, const mpz_class& b) { return gcd(a, b); }
int64_t to_int64(Checked64 a) { return a.v; }
int64_t to_int64(const mpz_class& a) {
    if (!a.fits_slong_p()) throw std::overflow_error("flow coefficient exceeds 64 bits");
    return a.get_si();
}
bool sign_negative(Checked64 a) { return a.v < 0; }
bool sign_negative(const mpz_class& a) { return a < 0; }

template <typename Int>
struct Eliminated {
    std::vector<std::vector<Int>> null_rows; // identity parts of non-pivot rows
    size_t rank = 0;
};

// Fraction-free row elimination on [We-rows | I]; densest column last.
template <typename Int>
Eliminated<Int> eliminate(const SparseNet& net, const std::vector<PlaceId>& places,
                          const std::vector<TransId>& trans) {
    const size_t np = places.size(), nt = trans.size();
    std::vector<size_t> place_pos(net.place_count(), SIZE_MAX);
    for (size_t i = 0; i < np; ++i) place_pos[places[i]] = i;

    std::vector<std::vector<Int>> effect(np, std::vector<Int>(nt, Int(0)));
    std::vector<std::vector<Int>> ident(np, std::vector<Int>(np, Int(0)));
    std::vector<size_t> density(nt, 0);
    for (size_t j = 0; j < nt; ++j) {
        for (const auto& [p, d] : net.effect_column(trans[j])) {
            effect[place_pos[p]][j] = Int(d);
            ++density[j];
        }
    }
    for (size_t i = 0; i < np; ++i) ident[i][i] = Int(1);

    std::vector<size_t> col_order(nt);
    std::iota(col_order.begin(), col_order.end(), 0);
    std::stable_sort(col_order.begin(), col_order.end(),
                     [&](size_t a, size_t b) { return density[a] < density[b]; });

    auto normalize_row = [&](size_t i) {
        Int g(0);
        for (const Int& x : effect[i]) g = gcd_val(g, x);
        for (const Int& x : ident[i]) g = gcd_val(g, x);
        if (g == 0 || abs_val(g) == 1) return;
        for (Int& x : effect[i]) x = x / g;
        for (Int& x : ident[i]) x = x / g;
    };

    std::vector<uint8_t> used(np, 0);
    size_t rank = 0;
    for (size_t c : col_order) {
        size_t pivot = SIZE_MAX;
        for (size_t i = 0; i < np; ++i) {
            if (!used[i] && !(effect[i][c] == 0)) {
                pivot = i;
                break;
            }
        }
        if (pivot == SIZE_MAX) continue;
        used[pivot] = 1;
        ++rank;
        const Int pv = effect[pivot][c];
        for (size_t i = 0; i < np; ++i) {
            if (used[i] || effect[i][c] == 0) continue;
            const Int f = effect[i][c];
            for (size_t j = 0; j < nt; ++j)
                effect[i][j] = effect[i][j] * pv - effect[pivot][j] * f;
            for (size_t j = 0; j < np; ++j)
                ident[i][j] = ident[i][j] * pv - ident[pivot][j] * f;
            normalize_row(i);
        }
    }

    Eliminated<Int> out;
    out.rank = rank;
    for (size_t i = 0; i < np; ++i)
        if (!used[i]) out.null_rows.push_back(std::move(ident[i]));
    return out;
}

template <typename Int>
std::vector<FlowVector> flows_from(const SparseNet& net) {
    std::vector<PlaceId> places = net.alive_places();
    std::vector<TransId> trans = net.alive_transitions();
    Eliminated<Int> elim = eliminate<Int>(net, places, trans);

    std::vector<FlowVector> flows;
    for (auto& row : elim.null_rows) {
        Int g(0);
        for (const Int& x : row) g = gcd_val(g, x);
        if (g == 0) continue; // all-zero row: no alive place at all
        FlowVector f;
        bool lead_set = false, lead_negative = false;
        for (size_t i = 0; i < row.size(); ++i) {
            if (row[i] == 0) continue;
            if (!lead_set) {
                lead_set = true;
                lead_negative = sign_negative(row[i]);
            }
            Int c = row[i] / g;
            f.coeffs.emplace_back(places[i], to_int64(c));
        }
        if (lead_negative)
            for (auto& [p, c] : f.coeffs) c = -c;
        f.semiflow = std::all_of(f.coeffs.begin(), f.coeffs.end(),
                                 [](const auto& e) { return e.second >= 0; });
        f.constant = f.dot(net.initial());
        flows.push_back(std::move(f));
    }
    std::stable_sort(flows.begin(), flows.end(), [](const FlowVector& a, const FlowVector& b) {
        if (a.semiflow != b.semiflow) return a.semiflow;
        return a.coeffs < b.coeffs;
    });
    return flows;
}

} // namespace

std::vector<FlowVector> compute_flows(const SparseNet& net) {
    try {
        return flows_from<Checked64>(net);
    } catch (const Overflow&) {
        return flows_from<mpz_class>(net);
    }
}

size_t effect_rank(const SparseNet& net) {
    std::vector<PlaceId> places = net.alive_places();
    std::vector<TransId> trans = net.alive_transitions();
    try {
        return eliminate<Checked64>(net, places, trans).rank;
    } catch (const Overflow&) {
        return eliminate<mpz_class>(net, places, trans).rank;
    }
}

EffectClasses dedup_effects(const SparseNet& net) {
    EffectClasses out;
    out.representative.resize(net.transition_count());
    for (TransId t = 0; t < net.transition_count(); ++t) out.representative[t] = t;

    std::map<std::vector<std::pair<PlaceId, int64_t>>, TransId> by_effect;
    std::map<TransId, std::vector<TransId>> members;
    for (TransId t : net.alive_transitions()) {
        auto key = net.effect_column(t);
        auto [it, inserted] = by_effect.try_emplace(std::move(key), t);
        out.representative[t] = it->second;
        members[it->second].push_back(t);
    }
    for (auto& [rep, list] : members) out.classes.emplace_back(rep, std::move(list));
    return out;
}

} // namespace pnred
