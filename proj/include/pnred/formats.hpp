// Ingestion of PNML nets and property files; export of reduced nets,
// rewritten properties, and verdict reports.
#pragma once

#include "pnred/net.hpp"
#include "pnred/property.hpp"

#include <stdexcept>
#include <string>

namespace pnred {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// PT-net PNML subset: pages flattened, inscriptions are natural weights
// (default 1), initial markings read from place elements.
SparseNet parse_pnml(const std::string& bytes);
std::string export_net(const SparseNet& net);

// Property input: MCC-style reachability XML when the payload is XML,
// otherwise the line-oriented text grammar (see README).
PropertySet parse_properties(const std::string& bytes, const SparseNet& net);
PropertySet parse_properties_xml(const std::string& bytes, const SparseNet& net);
PropertySet parse_properties_text(const std::string& bytes, const SparseNet& net);
std::string export_properties(const PropertySet& ps, const SparseNet& net);

struct VerdictReport {
    struct Entry {
        std::string name;
        std::string outcome; // TRUE | FALSE | UNKNOWN
        Technique technique = Technique::None;
        int64_t wall_ms = 0;
    };
    std::vector<Entry> entries;
};

// One machine-parsable line per property: FORMULA <name> <outcome> <technique>.
std::string emit_report(const VerdictReport& report);

} // namespace pnred
