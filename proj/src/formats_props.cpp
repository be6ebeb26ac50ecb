#include "pnred/formats.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cctype>
#include <map>
#include <sstream>

namespace pnred {

namespace {

namespace pt = boost::property_tree;

BoolExpr fireable(const SparseNet& net, const std::vector<std::string>& names) {
    std::vector<BoolExpr> any;
    for (const std::string& name : names) {
        auto t = net.find_transition(name);
        if (!t) throw ParseError("is-fireable references unknown transition '" + name + "'");
        std::vector<BoolExpr> conj;
        for (const Arc& a : net.pre(*t)) {
            Atom atom;
            atom.coeffs = {{a.node, 1}};
            atom.op = CmpOp::Ge;
            atom.rhs = int64_t(a.weight);
            conj.push_back(BoolExpr::make_atom(std::move(atom)));
        }
        any.push_back(BoolExpr::conj(std::move(conj)));
    }
    return BoolExpr::disj(std::move(any));
}

// ---- line-oriented text grammar ----

struct TextParser {
    const SparseNet& net;
    std::string src;
    size_t pos = 0;

    explicit TextParser(const SparseNet& n, std::string s) : net(n), src(std::move(s)) {}

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t')) ++pos;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (src.compare(pos, tok.size(), tok) == 0) {
            pos += tok.size();
            return true;
        }
        return false;
    }
    bool peek(char c) {
        skip_ws();
        return pos < src.size() && src[pos] == c;
    }
    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && (std::isalnum((unsigned char)src[pos]) || src[pos] == '_' ||
                                    src[pos] == '.' || src[pos] == '-'))
            ++pos;
        if (start == pos) throw ParseError("expected identifier at offset " + std::to_string(pos));
        return src.substr(start, pos - start);
    }
    int64_t integer() {
        skip_ws();
        size_t start = pos;
        while (pos < src.size() && std::isdigit((unsigned char)src[pos])) ++pos;
        if (start == pos) throw ParseError("expected number at offset " + std::to_string(pos));
        return std::stoll(src.substr(start, pos - start));
    }

    // weighted sum: [-] term (('+'|'-') term)*, term: INT ['*' m(p)] | m(p)
    struct Lin {
        std::map<PlaceId, int64_t> coeffs;
        int64_t constant = 0;
    };

    PlaceId place_ref() {
        if (!eat("m(")) throw ParseError("expected m(<place>) at offset " + std::to_string(pos));
        std::string name = ident();
        if (!eat(")")) throw ParseError("expected ')' after place name " + name);
        auto p = net.find_place(name);
        if (!p) throw ParseError("unknown place '" + name + "'");
        return *p;
    }

    void term(Lin& lin, int64_t sign) {
        skip_ws();
        if (pos < src.size() && std::isdigit((unsigned char)src[pos])) {
            int64_t k = integer();
            skip_ws();
            bool star = eat("*");
            if (star || (pos + 1 < src.size() && src[pos] == 'm' && src[pos + 1] == '(')) {
                lin.coeffs[place_ref()] += sign * k;
            } else {
                lin.constant += sign * k;
            }
        } else {
            lin.coeffs[place_ref()] += sign;
        }
    }

    Lin lin_expr() {
        Lin lin;
        int64_t sign = eat("-") ? -1 : 1;
        term(lin, sign);
        while (true) {
            if (eat("+"))
                term(lin, 1);
            else if (eat("-"))
                term(lin, -1);
            else
                break;
        }
        return lin;
    }

    BoolExpr atom() {
        Lin lhs = lin_expr();
        CmpOp op;
        bool negate = false;
        if (eat("<="))
            op = CmpOp::Le;
        else if (eat(">="))
            op = CmpOp::Ge;
        else if (eat("!=")) {
            op = CmpOp::Eq;
            negate = true;
        } else if (eat("=="))
            op = CmpOp::Eq;
        else if (eat("="))
            op = CmpOp::Eq;
        else if (eat("<"))
            op = CmpOp::Lt;
        else if (eat(">"))
            op = CmpOp::Gt;
        else
            throw ParseError("expected comparison operator at offset " + std::to_string(pos));
        Lin rhs = lin_expr();
        Atom a;
        for (auto& [p, c] : rhs.coeffs) lhs.coeffs[p] -= c;
        for (auto& [p, c] : lhs.coeffs)
            if (c != 0) a.coeffs.emplace_back(p, c);
        a.op = op;
        a.rhs = rhs.constant - lhs.constant;
        BoolExpr e = BoolExpr::make_atom(std::move(a));
        return negate ? BoolExpr::negate(std::move(e)) : e;
    }

    BoolExpr unary() {
        if (eat("!")) return BoolExpr::negate(unary());
        if (eat("(")) {
            BoolExpr e = or_expr();
            if (!eat(")")) throw ParseError("missing ')' at offset " + std::to_string(pos));
            return e;
        }
        if (eat("true")) return BoolExpr::constant(true);
        if (eat("false")) return BoolExpr::constant(false);
        if (eat("fireable(")) {
            std::vector<std::string> names{ident()};
            while (eat(",")) names.push_back(ident());
            if (!eat(")")) throw ParseError("missing ')' after fireable");
            return fireable(net, names);
        }
        return atom();
    }

    BoolExpr and_expr() {
        std::vector<BoolExpr> kids{unary()};
        while (eat("&&")) kids.push_back(unary());
        return kids.size() == 1 ? std::move(kids[0]) : BoolExpr::conj(std::move(kids));
    }

    BoolExpr or_expr() {
        std::vector<BoolExpr> kids{and_expr()};
        while (eat("||")) kids.push_back(and_expr());
        return kids.size() == 1 ? std::move(kids[0]) : BoolExpr::disj(std::move(kids));
    }
};

// ---- MCC-style XML ----

struct XmlFormula {
    const SparseNet& net;

    BoolExpr parse(const pt::ptree& node, const std::string& key) {
        if (key == "conjunction") {
            std::vector<BoolExpr> kids;
            for (const auto& [k, child] : node)
                if (k != "<xmlattr>") kids.push_back(parse(child, k));
            return BoolExpr::conj(std::move(kids));
        }
        if (key == "disjunction") {
            std::vector<BoolExpr> kids;
            for (const auto& [k, child] : node)
                if (k != "<xmlattr>") kids.push_back(parse(child, k));
            return BoolExpr::disj(std::move(kids));
        }
        if (key == "negation") {
            auto [k, child] = first_child(node);
            return BoolExpr::negate(parse(child, k));
        }
        if (key == "is-fireable") {
            std::vector<std::string> names;
            for (const auto& [k, child] : node)
                if (k == "transition") names.push_back(child.data());
            return fireable(net, names);
        }
        if (key == "integer-le" || key == "integer-lt" || key == "integer-ge" ||
            key == "integer-gt" || key == "integer-eq") {
            std::vector<std::pair<std::map<PlaceId, int64_t>, int64_t>> sides;
            for (const auto& [k, child] : node)
                if (k != "<xmlattr>") sides.push_back(operand(child, k));
            if (sides.size() != 2) throw ParseError("comparison needs exactly two operands");
            Atom a;
            std::map<PlaceId, int64_t> coeffs = std::move(sides[0].first);
            for (auto& [p, c] : sides[1].first) coeffs[p] -= c;
            for (auto& [p, c] : coeffs)
                if (c != 0) a.coeffs.emplace_back(p, c);
            a.rhs = sides[1].second - sides[0].second;
            if (key == "integer-le")
                a.op = CmpOp::Le;
            else if (key == "integer-lt")
                a.op = CmpOp::Lt;
            else if (key == "integer-ge")
                a.op = CmpOp::Ge;
            else if (key == "integer-gt")
                a.op = CmpOp::Gt;
            else
                a.op = CmpOp::Eq;
            return BoolExpr::make_atom(std::move(a));
        }
        throw ParseError("unsupported formula element <" + key + ">");
    }

    std::pair<std::map<PlaceId, int64_t>, int64_t> operand(const pt::ptree& node,
                                                           const std::string& key) {
        if (key == "integer-constant") return {{}, std::stoll(node.data())};
        if (key == "tokens-count") {
            std::map<PlaceId, int64_t> coeffs;
            for (const auto& [k, child] : node) {
                if (k != "place") continue;
                auto p = net.find_place(child.data());
                if (!p) throw ParseError("tokens-count references unknown place '" +
                                         child.data() + "'");
                coeffs[*p] += 1;
            }
            return {std::move(coeffs), 0};
        }
        throw ParseError("unsupported operand element <" + key + ">");
    }

    static std::pair<std::string, const pt::ptree&> first_child(const pt::ptree& node) {
        for (const auto& [k, child] : node)
            if (k != "<xmlattr>") return {k, child};
        throw ParseError("empty formula element");
    }
};

} // namespace

PropertySet parse_properties_text(const std::string& bytes, const SparseNet& net) {
    PropertySet ps;
    std::istringstream in(bytes);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        bool reach = false;
        std::string rest;
        if (line.compare(first, 10, "invariant ") == 0) {
            rest = line.substr(first + 10);
        } else if (line.compare(first, 6, "reach ") == 0) {
            reach = true;
            rest = line.substr(first + 6);
        } else {
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected 'invariant <name>:' or 'reach <name>:'");
        }
        size_t colon = rest.find(':');
        if (colon == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": missing ':'");
        Property prop;
        prop.name = rest.substr(0, colon);
        while (!prop.name.empty() && prop.name.back() == ' ') prop.name.pop_back();
        if (prop.name.empty())
            throw ParseError("line " + std::to_string(lineno) + ": empty property name");
        TextParser parser(net, rest.substr(colon + 1));
        BoolExpr phi = parser.or_expr();
        parser.skip_ws();
        if (parser.pos != parser.src.size() && parser.src[parser.pos] != '\r')
            throw ParseError("line " + std::to_string(lineno) + ": trailing junk after formula");
        // EF phi is verified as the invariant !phi with the report flipped
        prop.flip_report = reach;
        prop.invariant = reach ? BoolExpr::negate(std::move(phi)) : std::move(phi);
        prop.invariant.simplify();
        ps.items.push_back(std::move(prop));
    }
    return ps;
}

PropertySet parse_properties_xml(const std::string& bytes, const SparseNet& net) {
    pt::ptree tree;
    std::istringstream in(bytes);
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("malformed XML: ") + e.what());
    }
    auto set = tree.get_child_optional("property-set");
    if (!set) throw ParseError("missing <property-set> root");
    PropertySet ps;
    XmlFormula fml{net};
    for (const auto& [k, child] : *set) {
        if (k != "property") continue;
        Property prop;
        prop.name = child.get<std::string>("id", "");
        if (prop.name.empty()) throw ParseError("property without <id>");
        auto formula = child.get_child_optional("formula");
        if (!formula) throw ParseError("property " + prop.name + " without <formula>");
        auto [key, root] = XmlFormula::first_child(*formula);
        if (key == "all-paths") {
            auto [k2, inner] = XmlFormula::first_child(root);
            if (k2 != "globally") throw ParseError("expected <globally> under <all-paths>");
            auto [k3, phi] = XmlFormula::first_child(inner);
            prop.invariant = fml.parse(phi, k3);
        } else if (key == "exists-path") {
            auto [k2, inner] = XmlFormula::first_child(root);
            if (k2 != "finally") throw ParseError("expected <finally> under <exists-path>");
            auto [k3, phi] = XmlFormula::first_child(inner);
            prop.invariant = BoolExpr::negate(fml.parse(phi, k3));
            prop.flip_report = true;
        } else {
            prop.invariant = fml.parse(root, key);
        }
        prop.invariant.simplify();
        ps.items.push_back(std::move(prop));
    }
    return ps;
}

PropertySet parse_properties(const std::string& bytes, const SparseNet& net) {
    for (char c : bytes) {
        if (std::isspace((unsigned char)c)) continue;
        return c == '<' ? parse_properties_xml(bytes, net) : parse_properties_text(bytes, net);
    }
    return {};
}

std::string export_properties(const PropertySet& ps, const SparseNet& net) {
    std::ostringstream os;
    for (const Property& prop : ps.items) {
        if (prop.status != PropertyStatus::Open) continue;
        if (prop.flip_report) {
            BoolExpr phi = BoolExpr::negate(prop.invariant);
            phi.simplify();
            os << "reach " << prop.name << ": " << phi.to_string(&net) << '\n';
        } else {
            os << "invariant " << prop.name << ": " << prop.invariant.to_string(&net) << '\n';
        }
    }
    return os.str();
}

} // namespace pnred
