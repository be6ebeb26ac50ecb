#include "pnred/property.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pnred {

const char* cmp_op_text(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ge: return ">=";
    case CmpOp::Gt: return ">";
    }
    return "?";
}

static bool compare(__int128 lhs, CmpOp op, __int128 rhs) {
    switch (op) {
    case CmpOp::Lt: return lhs < rhs;
    case CmpOp::Le: return lhs <= rhs;
    case CmpOp::Eq: return lhs == rhs;
    case CmpOp::Ge: return lhs >= rhs;
    case CmpOp::Gt: return lhs > rhs;
    }
    return false;
}

bool Atom::eval(const Marking& m) const {
    __int128 sum = 0;
    for (const auto& [p, c] : coeffs) sum += __int128(c) * __int128(m.get(p));
    return compare(sum, op, rhs);
}

bool Atom::ground_value() const {
    return compare(0, op, rhs);
}

BoolExpr BoolExpr::constant(bool v) {
    BoolExpr e;
    e.kind = Kind::Const;
    e.value = v;
    return e;
}

BoolExpr BoolExpr::make_atom(Atom a) {
    // Zero coefficients are dropped at construction; a ground atom folds.
    a.coeffs.erase(std::remove_if(a.coeffs.begin(), a.coeffs.end(),
                                  [](const auto& e) { return e.second == 0; }),
                   a.coeffs.end());
    if (a.coeffs.empty()) return constant(a.ground_value());
    BoolExpr e;
    e.kind = Kind::Atom;
    e.atom = std::move(a);
    return e;
}

BoolExpr BoolExpr::negate(BoolExpr e) {
    if (e.kind == Kind::Const) return constant(!e.value);
    BoolExpr n;
    n.kind = Kind::Not;
    n.kids.push_back(std::move(e));
    return n;
}

BoolExpr BoolExpr::conj(std::vector<BoolExpr> kids) {
    BoolExpr e;
    e.kind = Kind::And;
    e.kids = std::move(kids);
    e.simplify();
    return e;
}

BoolExpr BoolExpr::disj(std::vector<BoolExpr> kids) {
    BoolExpr e;
    e.kind = Kind::Or;
    e.kids = std::move(kids);
    e.simplify();
    return e;
}

bool BoolExpr::eval(const Marking& m) const {
    switch (kind) {
    case Kind::Const: return value;
    case Kind::Atom: return atom.eval(m);
    case Kind::Not: return !kids[0].eval(m);
    case Kind::And:
        for (const auto& k : kids)
            if (!k.eval(m)) return false;
        return true;
    case Kind::Or:
        for (const auto& k : kids)
            if (k.eval(m)) return true;
        return false;
    }
    return false;
}

void BoolExpr::substitute_place(PlaceId p, uint64_t count) {
    if (kind == Kind::Atom) {
        auto it = std::find_if(atom.coeffs.begin(), atom.coeffs.end(),
                               [&](const auto& e) { return e.first == p; });
        if (it != atom.coeffs.end()) {
            // move c * count to the right-hand side
            atom.rhs -= it->second * int64_t(count);
            atom.coeffs.erase(it);
            if (atom.coeffs.empty()) *this = constant(atom.ground_value());
        }
        return;
    }
    for (auto& k : kids) k.substitute_place(p, count);
    simplify();
}

void BoolExpr::remap_places(const std::vector<int32_t>& place_map) {
    if (kind == Kind::Atom) {
        for (auto& [p, c] : atom.coeffs) {
            if (p >= place_map.size() || place_map[p] < 0)
                throw std::logic_error("atom references a discarded place");
            p = PlaceId(place_map[p]);
        }
        std::sort(atom.coeffs.begin(), atom.coeffs.end());
        return;
    }
    for (auto& k : kids) k.remap_places(place_map);
}

void BoolExpr::collect_support(std::set<PlaceId>& out) const {
    if (kind == Kind::Atom) {
        for (const auto& [p, c] : atom.coeffs)
            if (c != 0) out.insert(p);
        return;
    }
    for (const auto& k : kids) k.collect_support(out);
}

void BoolExpr::simplify() {
    for (auto& k : kids) k.simplify();
    switch (kind) {
    case Kind::Const:
    case Kind::Atom:
        return;
    case Kind::Not:
        if (kids[0].kind == Kind::Const) *this = constant(!kids[0].value);
        return;
    case Kind::And: {
        std::vector<BoolExpr> keep;
        for (auto& k : kids) {
            if (k.is_const(false)) {
                *this = constant(false);
                return;
            }
            if (!k.is_const(true)) keep.push_back(std::move(k));
        }
        if (keep.empty())
            *this = constant(true);
        else if (keep.size() == 1)
            *this = std::move(keep[0]);
        else
            kids = std::move(keep);
        return;
    }
    case Kind::Or: {
        std::vector<BoolExpr> keep;
        for (auto& k : kids) {
            if (k.is_const(true)) {
                *this = constant(true);
                return;
            }
            if (!k.is_const(false)) keep.push_back(std::move(k));
        }
        if (keep.empty())
            *this = constant(false);
        else if (keep.size() == 1)
            *this = std::move(keep[0]);
        else
            kids = std::move(keep);
        return;
    }
    }
}

std::string BoolExpr::to_string(const SparseNet* net) const {
    std::ostringstream os;
    switch (kind) {
    case Kind::Const:
        os << (value ? "true" : "false");
        break;
    case Kind::Atom: {
        bool first = true;
        for (const auto& [p, c] : atom.coeffs) {
            if (c >= 0 && !first) os << " + ";
            if (c < 0) os << (first ? "-" : " - ");
            int64_t a = c < 0 ? -c : c;
            if (a != 1) os << a << '*';
            os << "m(" << (net ? net->place_name(p) : "p" + std::to_string(p)) << ')';
            first = false;
        }
        os << ' ' << cmp_op_text(atom.op) << ' ' << atom.rhs;
        break;
    }
    case Kind::Not:
        os << "!(" << kids[0].to_string(net) << ')';
        break;
    case Kind::And:
    case Kind::Or: {
        const char* sep = kind == Kind::And ? " && " : " || ";
        os << '(';
        for (size_t i = 0; i < kids.size(); ++i) {
            if (i) os << sep;
            os << kids[i].to_string(net);
        }
        os << ')';
        break;
    }
    }
    return os.str();
}

const char* technique_text(Technique t) {
    switch (t) {
    case Technique::None: return "NONE";
    case Technique::Walk: return "WALK";
    case Technique::Smt: return "SMT";
    case Technique::Reduction: return "REDUCTION";
    case Technique::Oracle: return "ORACLE";
    }
    return "NONE";
}

std::set<PlaceId> PropertySet::support() const {
    std::set<PlaceId> out;
    for (const auto& prop : items)
        if (prop.status == PropertyStatus::Open) prop.invariant.collect_support(out);
    return out;
}

bool PropertySet::all_closed() const {
    return open_count() == 0;
}

size_t PropertySet::open_count() const {
    size_t n = 0;
    for (const auto& prop : items) n += prop.status == PropertyStatus::Open;
    return n;
}

void PropertySet::remap_places(const std::vector<int32_t>& place_map) {
    for (auto& prop : items)
        if (prop.status == PropertyStatus::Open) prop.invariant.remap_places(place_map);
}

void PropertySet::simplify_and_close(Technique tech) {
    for (auto& prop : items) {
        if (prop.status != PropertyStatus::Open) continue;
        prop.invariant.simplify();
        if (prop.invariant.kind == BoolExpr::Kind::Const) {
            prop.status = prop.invariant.value ? PropertyStatus::True : PropertyStatus::False;
            prop.technique = tech;
        }
    }
}

std::set<PlaceId> support(const PropertySet& ps) {
    return ps.support();
}

StutterSet stuttering(const SparseNet& net, const std::set<PlaceId>& supp) {
    StutterSet s;
    s.member.assign(net.transition_count(), 0);
    for (TransId t : net.alive_transitions()) {
        bool stutters = true;
        for (PlaceId p : supp) {
            if (net.effect(p, t) != 0) {
                stutters = false;
                break;
            }
        }
        s.member[t] = stutters ? 1 : 0;
    }
    return s;
}

BoolExpr deadlock_violation(const SparseNet& net) {
    std::vector<BoolExpr> conj;
    for (TransId t : net.alive_transitions()) {
        std::vector<BoolExpr> disabled; // some input place under its arc weight
        for (const Arc& a : net.pre(t)) {
            Atom atom;
            atom.coeffs = {{a.node, 1}};
            atom.op = CmpOp::Lt;
            atom.rhs = int64_t(a.weight);
            disabled.push_back(BoolExpr::make_atom(std::move(atom)));
        }
        conj.push_back(BoolExpr::disj(std::move(disabled)));
    }
    return BoolExpr::conj(std::move(conj));
}

PropertySet deadlock_as_safety(const SparseNet& net) {
    Property prop;
    prop.name = "deadlock";
    prop.kind = PropertyKind::Deadlock;
    prop.flip_report = true; // reported TRUE iff a deadlock exists, i.e. invariant violated
    prop.invariant = BoolExpr::negate(deadlock_violation(net));
    prop.invariant.simplify();
    PropertySet ps;
    ps.items.push_back(std::move(prop));
    return ps;
}

} // namespace pnred
