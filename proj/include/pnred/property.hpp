// Safety properties as Boolean ASTs over weighted-sum atoms, plus the
// deadlock query reduction to a safety invariant.
#pragma once

#include "pnred/net.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace pnred {

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

const char* cmp_op_text(CmpOp op);

// Normalized atom: sum(coeff_i * m(place_i)) op rhs.
struct Atom {
    std::vector<std::pair<PlaceId, int64_t>> coeffs; // sorted by place, nonzero
    CmpOp op = CmpOp::Eq;
    int64_t rhs = 0;

    bool eval(const Marking& m) const;
    bool ground() const { return coeffs.empty(); }
    bool ground_value() const; // eval with all-zero coefficients
};

struct BoolExpr {
    enum class Kind { Const, Atom, Not, And, Or };
    Kind kind = Kind::Const;
    bool value = false; // Const
    Atom atom;          // Atom
    std::vector<BoolExpr> kids;

    static BoolExpr constant(bool v);
    static BoolExpr make_atom(Atom a);
    static BoolExpr negate(BoolExpr e);
    static BoolExpr conj(std::vector<BoolExpr> kids); // empty -> true
    static BoolExpr disj(std::vector<BoolExpr> kids); // empty -> false

    bool eval(const Marking& m) const;
    // Replace every occurrence of place p by the constant count, then fold.
    void substitute_place(PlaceId p, uint64_t count);
    void remap_places(const std::vector<int32_t>& place_map);
    void collect_support(std::set<PlaceId>& out) const;
    void simplify();
    bool is_const(bool v) const { return kind == Kind::Const && value == v; }
    std::string to_string(const SparseNet* net = nullptr) const;
};

enum class PropertyKind { SafetyInvariant, Deadlock };
enum class PropertyStatus { Open, True, False };
enum class Technique { None, Walk, Smt, Reduction, Oracle };

const char* technique_text(Technique t);

struct Property {
    std::string name;
    BoolExpr invariant; // property holds iff invariant satisfied by every reachable marking
    PropertyKind kind = PropertyKind::SafetyInvariant;
    PropertyStatus status = PropertyStatus::Open;
    // EF queries are stored as the negated invariant; the reported verdict flips.
    bool flip_report = false;
    Technique technique = Technique::None;
    std::vector<std::string> witness_trace; // transition names, for disproofs found by walking
};

struct PropertySet {
    std::vector<Property> items;

    std::set<PlaceId> support() const; // union over Open properties
    bool all_closed() const;
    size_t open_count() const;
    void remap_places(const std::vector<int32_t>& place_map);
    // Fold constants; close properties whose invariant became a constant.
    void simplify_and_close(Technique tech);
};

// Places with nonzero coefficient in some atom of an Open property.
std::set<PlaceId> support(const PropertySet& ps);

struct StutterSet {
    std::vector<uint8_t> member; // indexed by transition
    bool contains(TransId t) const { return t < member.size() && member[t]; }
};

// Transitions with zero effect on every support place.
StutterSet stuttering(const SparseNet& net, const std::set<PlaceId>& supp);

// Deadlock reduced to safety: the returned invariant says "some transition
// is enabled"; its violation asserts every transition disabled.
PropertySet deadlock_as_safety(const SparseNet& net);
BoolExpr deadlock_violation(const SparseNet& net); // conjunction over transitions

} // namespace pnred
