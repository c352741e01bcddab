#include "strata/exports.hpp"

#include <sstream>

namespace strata {

namespace {

std::string atom(const std::string& id) {
    if (id.find('\'') != std::string::npos) {
        throw Error(Errc::IdNotQuotable, id, "id \"" + id + "\" contains an apostrophe");
    }
    return "'" + id + "'";
}

}  // namespace

std::string export_logic_facts(const LayeredModel& model) {
    std::ostringstream out;
    for (const Component& c : model.components()) {
        out << "vertex(" << layer_number(c.layer) << ", " << atom(c.id) << ").\n";
    }
    for (const Link& l : model.links()) {
        out << "edge(" << layer_number(l.layer) << ", " << atom(l.a) << ", " << atom(l.b) << ").\n";
    }
    for (const Projection& p : model.projections()) {
        out << "map(" << layer_number(model.layer_of(p.upper)) << ", " << atom(p.upper) << ", "
            << atom(p.lower) << ").\n";
    }
    for (const Requirement& r : model.requirements()) {
        out << "requirement(" << atom(r.id) << ", " << layer_number(r.layer) << ", " << atom(r.src)
            << ", " << atom(r.dst) << ").\n";
    }
    return out.str();
}

std::string export_drawing(const LayeredModel& model) {
    std::ostringstream out;
    out << "digraph \"" << model.name() << "\" {\n";
    out << "  node [shape=box];\n";
    for (Layer n : kLayersTopDown) {
        out << "  subgraph \"cluster_" << layer_name(n) << "\" {\n";
        out << "    label=\"" << layer_name(n) << "\";\n";
        for (const std::string& id : model.components_on(n)) {
            out << "    \"" << id << "\";\n";
        }
        out << "  }\n";
    }
    for (const Link& l : model.links()) {
        out << "  \"" << l.a << "\" -> \"" << l.b << "\" [dir=none];\n";
    }
    for (const Projection& p : model.projections()) {
        out << "  \"" << p.upper << "\" -> \"" << p.lower << "\" [style=dashed];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace strata
