#include "pnred/formats.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <map>
#include <sstream>

namespace pnred {

namespace {

namespace pt = boost::property_tree;

struct ArcDecl {
    std::string id, source, target;
    uint32_t weight;
};

struct NetDecl {
    std::vector<std::pair<std::string, uint64_t>> places; // id, initial
    std::vector<std::string> transitions;
    std::vector<ArcDecl> arcs;
};

uint64_t parse_nat(const std::string& text, const std::string& where) {
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("bad number '" + text + "' in " + where);
    }
    while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    if (pos != text.size()) throw ParseError("bad number '" + text + "' in " + where);
    if (v < 0) throw ParseError("negative value '" + text + "' in " + where);
    return uint64_t(v);
}

std::string text_of(const pt::ptree& node) {
    // <text>...</text> child, or direct data
    if (auto child = node.get_child_optional("text")) return child->data();
    return node.data();
}

void scan(const pt::ptree& tree, NetDecl& out) {
    for (const auto& [key, child] : tree) {
        if (key == "place") {
            std::string id = child.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw ParseError("place element without id");
            uint64_t m0 = 0;
            if (auto init = child.get_child_optional("initialMarking")) {
                std::string t = text_of(*init);
                if (!t.empty()) m0 = parse_nat(t, "initialMarking of place " + id);
            }
            out.places.emplace_back(id, m0);
        } else if (key == "transition") {
            std::string id = child.get<std::string>("<xmlattr>.id", "");
            if (id.empty()) throw ParseError("transition element without id");
            out.transitions.push_back(id);
        } else if (key == "arc") {
            ArcDecl arc;
            arc.id = child.get<std::string>("<xmlattr>.id", "");
            arc.source = child.get<std::string>("<xmlattr>.source", "");
            arc.target = child.get<std::string>("<xmlattr>.target", "");
            if (arc.source.empty() || arc.target.empty())
                throw ParseError("arc '" + arc.id + "' missing source or target");
            arc.weight = 1;
            if (auto insc = child.get_child_optional("inscription")) {
                std::string t = text_of(*insc);
                if (!t.empty()) {
                    uint64_t w = parse_nat(t, "inscription of arc " + arc.id);
                    if (w == 0) throw ParseError("zero weight on arc " + arc.id);
                    arc.weight = uint32_t(w);
                }
            }
            out.arcs.push_back(std::move(arc));
        } else if (key == "page" || key == "net" || key == "pnml") {
            scan(child, out);
        }
    }
}

} // namespace

SparseNet parse_pnml(const std::string& bytes) {
    pt::ptree tree;
    std::istringstream in(bytes);
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw ParseError(std::string("malformed XML: ") + e.what());
    }
    NetDecl decl;
    scan(tree, decl);

    SparseNet net;
    std::map<std::string, PlaceId> place_of;
    std::map<std::string, std::pair<SparseVec, SparseVec>> columns; // per transition: pre, post
    for (const auto& [id, m0] : decl.places) {
        if (place_of.count(id)) throw ParseError("duplicate place id " + id);
        place_of[id] = net.add_place(id, m0);
    }
    for (const auto& id : decl.transitions) {
        if (columns.count(id) || place_of.count(id)) throw ParseError("duplicate node id " + id);
        columns[id];
    }
    for (const ArcDecl& arc : decl.arcs) {
        bool src_place = place_of.count(arc.source) > 0;
        bool dst_place = place_of.count(arc.target) > 0;
        if (src_place && columns.count(arc.target)) {
            SparseVec& pre = columns[arc.target].first;
            PlaceId p = place_of[arc.source];
            sparse_set(pre, p, sparse_get(pre, p) + arc.weight);
        } else if (columns.count(arc.source) && dst_place) {
            SparseVec& post = columns[arc.source].second;
            PlaceId p = place_of[arc.target];
            sparse_set(post, p, sparse_get(post, p) + arc.weight);
        } else {
            throw ParseError("unknown node in arc '" + arc.id + "' (" + arc.source + " -> " +
                             arc.target + ")");
        }
    }
    for (const auto& id : decl.transitions) {
        auto& [pre, post] = columns[id];
        net.add_transition(id, std::move(pre), std::move(post));
    }
    return net;
}

std::string export_net(const SparseNet& net) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<pnml xmlns=\"http://www.pnml.org/version-2009/grammar/pnml\">\n";
    os << "  <net id=\"net0\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
    os << "    <page id=\"page0\">\n";
    for (PlaceId p : net.alive_places()) {
        os << "      <place id=\"" << net.place_name(p) << "\">";
        uint64_t m0 = net.initial().get(p);
        if (m0) os << "<initialMarking><text>" << m0 << "</text></initialMarking>";
        os << "</place>\n";
    }
    size_t arc_id = 0;
    for (TransId t : net.alive_transitions()) {
        os << "      <transition id=\"" << net.transition_name(t) << "\"/>\n";
        for (const Arc& a : net.pre(t)) {
            os << "      <arc id=\"a" << arc_id++ << "\" source=\"" << net.place_name(a.node)
               << "\" target=\"" << net.transition_name(t) << "\"";
            if (a.weight != 1)
                os << "><inscription><text>" << a.weight << "</text></inscription></arc>\n";
            else
                os << "/>\n";
        }
        for (const Arc& a : net.post(t)) {
            os << "      <arc id=\"a" << arc_id++ << "\" source=\"" << net.transition_name(t)
               << "\" target=\"" << net.place_name(a.node) << "\"";
            if (a.weight != 1)
                os << "><inscription><text>" << a.weight << "</text></inscription></arc>\n";
            else
                os << "/>\n";
        }
    }
    os << "    </page>\n  </net>\n</pnml>\n";
    return os.str();
}

std::string emit_report(const VerdictReport& report) {
    std::ostringstream os;
    for (const auto& e : report.entries)
        os << "FORMULA " << e.name << ' ' << e.outcome << ' ' << technique_text(e.technique)
           << '\n';
    return os.str();
}

} // namespace pnred
