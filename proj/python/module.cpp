#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "strata/checklist.hpp"
#include "strata/consistency.hpp"
#include "strata/exports.hpp"
#include "strata/faultsim.hpp"
#include "strata/model.hpp"
#include "strata/textio.hpp"

namespace py = pybind11;

namespace {

py::dict component_dict(const strata::Component& c) {
    py::dict d;
    d["id"] = c.id;
    d["layer"] = strata::layer_number(c.layer);
    d["protocols"] = c.protocols;
    d["standards"] = c.standards;
    d["location"] = c.location;
    d["description"] = c.description;
    return d;
}

py::list cardinality_list(const strata::LayeredModel& model) {
    py::list rows;
    for (const strata::CardinalityRow& row : strata::cardinality_report(model)) {
        py::dict d;
        d["layer"] = strata::layer_number(row.layer);
        d["components"] = row.components;
        d["links"] = row.links;
        d["projections"] = row.projections ? py::cast(*row.projections) : py::none();
        d["lower_components"] =
            row.lower_components ? py::cast(*row.lower_components) : py::none();
        rows.append(d);
    }
    return rows;
}

py::dict validation_dict(const strata::ValidationReport& report) {
    auto findings = [](const std::vector<strata::ValidationFinding>& list) {
        py::list out;
        for (const strata::ValidationFinding& f : list) {
            out.append(py::make_tuple(f.code, f.subject, f.message));
        }
        return out;
    };
    py::dict d;
    d["violations"] = findings(report.violations);
    d["warnings"] = findings(report.warnings);
    return d;
}

strata::FaultScenario to_scenario(const strata::LayeredModel& model,
                                  const std::vector<std::string>& components,
                                  const std::vector<py::tuple>& links) {
    strata::FaultScenario scenario;
    for (const std::string& id : components) scenario.components.insert(id);
    for (const py::tuple& t : links) {
        if (t.size() != 3) throw py::value_error("link must be (layer, a, b)");
        auto layer = strata::layer_from_number(t[0].cast<int>());
        if (!layer) throw py::value_error("layer must be 1..4");
        scenario.links.insert(
            strata::LinkKey::make(*layer, t[1].cast<std::string>(), t[2].cast<std::string>()));
    }
    (void)model;
    return scenario;
}

py::dict impact_dict(const strata::ImpactReport& impact) {
    py::dict failed_components;
    for (const auto& [layer, ids] : impact.failed_components) {
        failed_components[py::int_(strata::layer_number(layer))] = ids;
    }
    py::dict failed_links;
    for (const auto& [layer, keys] : impact.failed_links) {
        py::list entries;
        for (const strata::LinkKey& key : keys) entries.append(key.display());
        failed_links[py::int_(strata::layer_number(layer))] = entries;
    }
    py::dict d;
    d["failed_components"] = failed_components;
    d["failed_links"] = failed_links;
    d["broken_requirements"] = impact.broken_requirements;
    d["intact_requirements"] = impact.intact_requirements;
    return d;
}

}  // namespace

PYBIND11_MODULE(pystrata, m) {
    m.doc() = "Four-layer distributed system model analysis";

    py::register_exception<strata::Error>(m, "StrataError");

    py::class_<strata::LayeredModel>(m, "Model")
        .def_property_readonly("name", &strata::LayeredModel::name)
        .def("__repr__",
             [](const strata::LayeredModel& model) {
                 return "<Model " + model.name() + ": " +
                        std::to_string(model.components().size()) + " components, " +
                        std::to_string(model.links().size()) + " links, " +
                        std::to_string(model.projections().size()) + " projections>";
             })
        .def("components",
             [](const strata::LayeredModel& model) {
                 py::list out;
                 for (const strata::Component& c : model.components()) {
                     out.append(component_dict(c));
                 }
                 return out;
             })
        .def("requirements", [](const strata::LayeredModel& model) {
            py::list out;
            for (const strata::Requirement& r : model.requirements()) {
                py::dict d;
                d["id"] = r.id;
                d["src"] = r.src;
                d["dst"] = r.dst;
                d["layer"] = strata::layer_number(r.layer);
                out.append(d);
            }
            return out;
        });

    m.def(
        "parse_model",
        [](const std::string& text) { return strata::parse_model(text).model; },
        py::arg("text"), "Parse the model text format.");
    m.def("serialize_model", &strata::serialize_model, py::arg("model"),
          "Canonical text form of a model.");
    m.def(
        "validate",
        [](const strata::LayeredModel& model, bool strict) {
            return validation_dict(strata::validate_structure(model, strict));
        },
        py::arg("model"), py::arg("strict") = true, "Structural rule check.");
    m.def("cardinality", &cardinality_list, py::arg("model"), "Per-layer set sizes, top first.");
    m.def(
        "classify_arity",
        [](const strata::LayeredModel& model, const std::string& id) {
            return std::string(strata::arity_name(strata::classify_projection_arity(model, id)));
        },
        py::arg("model"), py::arg("component"), "Projection arity class of a component.");
    m.def("export_facts", &strata::export_logic_facts, py::arg("model"),
          "Model as logic facts, one per line.");
    m.def("export_drawing", &strata::export_drawing, py::arg("model"),
          "Model as a graph-description text.");
    m.def(
        "consistency",
        [](const strata::LayeredModel& model) {
            strata::ConsistencyReport report = strata::consistency_check(model);
            py::dict d;
            d["verdict"] = std::string(strata::verdict_name(report.verdict));
            d["structure"] = validation_dict(report.structure);
            d["report"] = strata::render_consistency_report(report, strata::OutputFormat::Table);
            return d;
        },
        py::arg("model"), "Full consistency audit.");
    m.def(
        "checklist",
        [](const strata::LayeredModel& model) {
            py::list out;
            for (const strata::ChecklistItem& item : strata::generate_checklist(model)) {
                py::dict d;
                d["id"] = item.id;
                d["kind"] = item.kind == strata::CheckKind::Component ? "component" : "interaction";
                d["layer"] = strata::layer_number(item.layer);
                d["subject"] = item.subject;
                d["covered"] = item.status == strata::CheckStatus::Covered;
                d["witness"] = item.witness;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), "Requirements-coverage checklist.");
    m.def(
        "spofs",
        [](const strata::LayeredModel& model, const std::string& requirement_id) {
            const strata::Requirement* r = model.find_requirement(requirement_id);
            if (!r) {
                throw strata::Error(strata::Errc::UnknownElement, requirement_id,
                                    "unknown requirement \"" + requirement_id + "\"");
            }
            py::list out;
            for (const strata::ElementRef& e : strata::enumerate_spofs(model, *r)) {
                out.append(e.display());
            }
            return out;
        },
        py::arg("model"), py::arg("requirement"),
        "Single points of failure of one requirement.");
    m.def(
        "inject",
        [](const strata::LayeredModel& model, const std::vector<std::string>& components,
           const std::vector<py::tuple>& links) {
            return impact_dict(
                strata::propagate_failures(model, to_scenario(model, components, links)));
        },
        py::arg("model"), py::arg("components") = std::vector<std::string>{},
        py::arg("links") = std::vector<py::tuple>{},
        "Remove elements and propagate failures upward.");
    m.def(
        "fmea",
        [](const strata::LayeredModel& model) {
            py::list out;
            for (const strata::FmeaRow& row : strata::generate_fmea(model)) {
                py::dict d;
                d["element"] = row.element.display();
                d["layer"] = strata::layer_number(row.element.layer);
                d["severity"] = static_cast<double>(row.severity.broken) /
                                static_cast<double>(row.severity.total);
                d["effects"] = row.effects;
                d["collateral"] = row.collateral;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), "Single-fault effect analysis rows.");
}
