#include "strata/consistency.hpp"

#include <algorithm>
#include <sstream>

#include "strata/faultsim.hpp"

namespace strata {

std::string render_realization_tree(const RealizationTree& tree, int indent) {
    std::ostringstream out;
    out << std::string(indent * 2, ' ') << '[' << layer_name(tree.root.layer) << ']';
    for (const std::string& v : tree.root.vertices) out << ' ' << v;
    out << '\n';
    for (const RealizationTree& child : tree.children) {
        out << render_realization_tree(child, indent + 1);
    }
    return out.str();
}

std::optional<WitnessPath> deterministic_path(const LayeredModel& model, Layer layer,
                                              const std::string& src, const std::string& dst,
                                              const Exclusions& excluded) {
    for (const std::string* id : {&src, &dst}) {
        const Component* c = model.find_component(*id);
        if (!c) throw Error(Errc::UnknownElement, *id, "unknown component \"" + *id + "\"");
        if (c->layer != layer) {
            throw Error(Errc::WrongLayer, *id,
                        "component \"" + *id + "\" is not on layer " +
                            std::string(layer_name(layer)));
        }
    }
    auto path = lexicographic_shortest_path(model, layer, src, dst, excluded);
    if (!path) return std::nullopt;
    return WitnessPath{layer, std::move(*path)};
}

namespace {

// Builds the witness tree for a path already known to be realizable: every
// link of `path` is usable in `index`, so a viable image pair exists at each
// step down to the physical layer.
RealizationTree build_tree(const LayeredModel& model, const SurvivalIndex& index, Layer layer,
                           std::vector<std::string> path) {
    RealizationTree node;
    node.root = WitnessPath{layer, std::move(path)};
    if (layer == Layer::Physical) return node;
    Layer below = layer_below(layer);
    for (std::size_t i = 0; i + 1 < node.root.vertices.size(); ++i) {
        const std::string& u = node.root.vertices[i];
        const std::string& v = node.root.vertices[i + 1];
        const std::string* best_a = nullptr;
        const std::string* best_b = nullptr;
        for (const std::string& ia : model.images(u)) {
            if (!index.component_alive(ia)) continue;
            for (const std::string& ib : model.images(v)) {
                if (!index.component_alive(ib)) continue;
                if (!index.connected(below, ia, ib)) continue;
                if (!best_a || ia < *best_a || (ia == *best_a && ib < *best_b)) {
                    best_a = &ia;
                    best_b = &ib;
                }
                break;  // images are sorted, first viable ib is smallest for this ia
            }
        }
        auto sub = index.path(below, *best_a, *best_b);
        node.children.push_back(build_tree(model, index, below, std::move(*sub)));
    }
    return node;
}

}  // namespace

std::optional<RealizationTree> realize_link(const LayeredModel& model, Layer layer,
                                            const std::string& a, const std::string& b,
                                            const Exclusions& excluded) {
    LinkKey key = LinkKey::make(layer, a, b);
    if (!model.has_link(key)) {
        throw Error(Errc::NotALink, key.display(),
                    "no link between \"" + a + "\" and \"" + b + "\" on layer " +
                        std::string(layer_name(layer)));
    }
    SurvivalIndex index(model, excluded);
    if (!index.link_usable(key)) return std::nullopt;
    return build_tree(model, index, layer, {a, b});
}

AccessibilityResult check_accessibility(const LayeredModel& model,
                                        const Requirement& requirement) {
    AccessibilityResult result;
    SurvivalIndex index(model, {});
    auto witness = index.path(requirement.layer, requirement.src, requirement.dst);
    if (witness) {
        result.pass = true;
        result.evidence = build_tree(model, index, requirement.layer, std::move(*witness));
        return result;
    }
    // Explain the failure: either no path at all, or the canonical path's
    // first link that has no realization.
    auto plain = lexicographic_shortest_path(model, requirement.layer, requirement.src,
                                             requirement.dst, {});
    if (!plain) {
        result.failure = "no path between \"" + requirement.src + "\" and \"" + requirement.dst +
                         "\" on layer " + std::string(layer_name(requirement.layer));
        return result;
    }
    for (std::size_t i = 0; i + 1 < plain->size(); ++i) {
        LinkKey key = LinkKey::make(requirement.layer, (*plain)[i], (*plain)[i + 1]);
        if (!index.link_usable(key)) {
            result.failure = key.display() + " has no realization";
            return result;
        }
    }
    result.failure = "no realizable path";  // some path exists, canonical one realizes: unreachable
    return result;
}

std::vector<CompatibilityFinding> check_compatibility(const LayeredModel& model) {
    std::vector<CompatibilityFinding> findings;
    for (const Link& l : model.links()) {
        const Component* ca = model.find_component(l.a);
        const Component* cb = model.find_component(l.b);
        if (ca->protocols.empty() || cb->protocols.empty()) {
            findings.push_back({CompatibilityKind::UnspecifiedProtocols, l.key()});
            continue;
        }
        bool overlap = false;
        for (const std::string& p : ca->protocols) {
            if (cb->protocols.count(p)) {
                overlap = true;
                break;
            }
        }
        if (!overlap) findings.push_back({CompatibilityKind::Incompatible, l.key()});
    }
    return findings;  // links are already in canonical order
}

TransparencyResult check_cardinality_transparency(const LayeredModel& model,
                                                  const Requirement& requirement) {
    TransparencyResult result;
    if (!requirement.min_replicas && !requirement.min_locations) return result;
    std::set<std::string> images = model.physical_images(requirement.dst);
    if (requirement.min_replicas) {
        int actual = static_cast<int>(images.size());
        result.replicas = CountCheck{*requirement.min_replicas, actual,
                                     actual >= *requirement.min_replicas};
    }
    if (requirement.min_locations) {
        std::set<std::string> tagged;
        int untagged = 0;
        for (const std::string& id : images) {
            const std::string& loc = model.find_component(id)->location;
            if (loc.empty()) {
                ++untagged;
            } else {
                tagged.insert(loc);
            }
        }
        int actual = static_cast<int>(tagged.size()) + untagged;
        result.locations = CountCheck{*requirement.min_locations, actual,
                                      actual >= *requirement.min_locations};
    }
    return result;
}

std::vector<std::string> check_openness(const LayeredModel& model) {
    std::vector<std::string> flagged;
    for (const Component& c : model.components()) {
        if (c.standards.empty()) flagged.push_back(c.id);
    }
    std::sort(flagged.begin(), flagged.end());
    return flagged;
}

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::Consistent: return "consistent";
        case Verdict::ConsistentWithWarnings: return "consistent-with-warnings";
        case Verdict::Inconsistent: return "inconsistent";
    }
    return "?";
}

ConsistencyReport consistency_check(const LayeredModel& model) {
    ConsistencyReport report;
    report.model_name = model.name();
    report.structure = validate_structure(model, /*strict=*/true);
    report.structure_ok = report.structure.ok();
    if (!report.structure_ok) {
        report.verdict = Verdict::Inconsistent;
        return report;
    }

    report.compatibility = check_compatibility(model);
    bool failed = false;
    bool warned = !report.structure.warnings.empty();
    for (const CompatibilityFinding& f : report.compatibility) {
        if (f.kind == CompatibilityKind::Incompatible) failed = true;
        if (f.kind == CompatibilityKind::UnspecifiedProtocols) warned = true;
    }

    for (const Requirement& r : model.requirements()) {
        RequirementFinding finding;
        finding.id = r.id;
        finding.accessibility = check_accessibility(model, r);
        finding.transparency = check_cardinality_transparency(model, r);
        if (finding.accessibility.pass) {
            finding.spofs_checked = true;
            finding.spofs = enumerate_spofs(model, r);
        }
        if (!finding.accessibility.pass || !finding.transparency.pass() ||
            !finding.spofs.empty()) {
            failed = true;
        }
        report.requirements.push_back(std::move(finding));
    }

    report.openness = check_openness(model);
    if (!report.openness.empty()) warned = true;

    report.verdict = failed ? Verdict::Inconsistent
                            : (warned ? Verdict::ConsistentWithWarnings : Verdict::Consistent);
    return report;
}

std::string render_consistency_report(const ConsistencyReport& report, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Lines) {
        out << "model\t" << report.model_name << "\n";
        for (const ValidationFinding& f : report.structure.violations) {
            out << "violation\t" << f.code << "\t" << f.subject << "\n";
        }
        for (const ValidationFinding& f : report.structure.warnings) {
            out << "warning\t" << f.code << "\t" << f.subject << "\n";
        }
        for (const CompatibilityFinding& f : report.compatibility) {
            out << (f.kind == CompatibilityKind::Incompatible ? "incompatible\t" : "unspecified\t")
                << f.link.display() << "\n";
        }
        for (const RequirementFinding& r : report.requirements) {
            out << "accessibility\t" << r.id << "\t" << (r.accessibility.pass ? "pass" : "fail")
                << "\n";
            if (r.transparency.replicas) {
                out << "replicas\t" << r.id << "\t"
                    << (r.transparency.replicas->pass ? "pass" : "fail") << "\t"
                    << r.transparency.replicas->actual << "/"
                    << r.transparency.replicas->required << "\n";
            }
            if (r.transparency.locations) {
                out << "locations\t" << r.id << "\t"
                    << (r.transparency.locations->pass ? "pass" : "fail") << "\t"
                    << r.transparency.locations->actual << "/"
                    << r.transparency.locations->required << "\n";
            }
            if (r.spofs_checked) {
                for (const ElementRef& e : r.spofs) {
                    out << "spof\t" << r.id << "\t" << e.display() << "\n";
                }
            }
        }
        for (const std::string& id : report.openness) {
            out << "undeclared\t" << id << "\n";
        }
        out << "verdict\t" << verdict_name(report.verdict) << "\n";
        return out.str();
    }

    out << "model: " << report.model_name << "\n";
    out << "structure: " << (report.structure_ok ? "ok" : "invalid") << " ("
        << report.structure.violations.size() << " violations, "
        << report.structure.warnings.size() << " warnings)\n";
    for (const ValidationFinding& f : report.structure.violations) {
        out << "  violation " << f.code << " " << f.subject << ": " << f.message << "\n";
    }
    for (const ValidationFinding& f : report.structure.warnings) {
        out << "  warning " << f.code << " " << f.subject << ": " << f.message << "\n";
    }
    if (!report.structure_ok) {
        out << "verdict: " << verdict_name(report.verdict) << "\n";
        return out.str();
    }

    std::size_t incompatible = 0;
    std::size_t unspecified = 0;
    for (const CompatibilityFinding& f : report.compatibility) {
        (f.kind == CompatibilityKind::Incompatible ? incompatible : unspecified) += 1;
    }
    out << "compatibility: " << incompatible << " incompatible, " << unspecified
        << " unspecified\n";
    for (const CompatibilityFinding& f : report.compatibility) {
        out << (f.kind == CompatibilityKind::Incompatible ? "  incompatible "
                                                          : "  warning UnspecifiedProtocols ")
            << f.link.display() << "\n";
    }

    for (const RequirementFinding& r : report.requirements) {
        bool ok = r.accessibility.pass && r.transparency.pass() && r.spofs.empty();
        out << "requirement " << r.id << ": " << (ok ? "pass" : "fail") << "\n";
        out << "  accessibility: " << (r.accessibility.pass ? "pass" : "fail") << "\n";
        if (r.accessibility.pass) {
            out << render_realization_tree(*r.accessibility.evidence, 2);
        } else {
            out << "    " << r.accessibility.failure << "\n";
        }
        auto count_line = [&](const char* label, const std::optional<CountCheck>& check) {
            out << "  " << label << ": ";
            if (!check) {
                out << "n/a\n";
            } else {
                out << (check->pass ? "pass" : "fail") << " (" << check->actual << " of "
                    << check->required << " required)\n";
            }
        };
        count_line("replicas", r.transparency.replicas);
        count_line("locations", r.transparency.locations);
        if (!r.spofs_checked) {
            out << "  failure-transparency: not applicable (requirement not accessible)\n";
        } else if (r.spofs.empty()) {
            out << "  failure-transparency: pass (no single point of failure)\n";
        } else {
            out << "  failure-transparency: fail (" << r.spofs.size()
                << " single points of failure)\n";
            for (const ElementRef& e : r.spofs) {
                out << "    spof " << e.display();
                if (!e.is_link) out << " [" << layer_name(e.layer) << "]";
                out << "\n";
            }
        }
    }

    out << "openness: " << report.openness.size() << " components without declared standards\n";
    for (const std::string& id : report.openness) {
        out << "  undeclared " << id << "\n";
    }
    out << "verdict: " << verdict_name(report.verdict) << "\n";
    return out.str();
}

}  // namespace strata
