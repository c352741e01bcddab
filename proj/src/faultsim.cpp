#include "strata/faultsim.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "strata/consistency.hpp"

namespace strata {

std::size_t ImpactReport::failed_count() const {
    std::size_t n = 0;
    for (const auto& [layer, ids] : failed_components) n += ids.size();
    for (const auto& [layer, keys] : failed_links) n += keys.size();
    return n;
}

namespace {

void check_scenario(const LayeredModel& model, const FaultScenario& scenario) {
    for (const std::string& id : scenario.components) {
        if (!model.find_component(id)) {
            throw Error(Errc::UnknownElement, id, "unknown component \"" + id + "\"");
        }
    }
    for (const LinkKey& key : scenario.links) {
        if (!model.has_link(key)) {
            throw Error(Errc::UnknownElement, key.display(), "unknown " + key.display());
        }
    }
}

bool requirement_broken(const SurvivalIndex& index, const Requirement& r) {
    if (!index.component_alive(r.src) || !index.component_alive(r.dst)) return true;
    return !index.connected(r.layer, r.src, r.dst);
}

}  // namespace

ImpactReport propagate_failures(const LayeredModel& model, const FaultScenario& scenario) {
    check_scenario(model, scenario);
    SurvivalIndex index(model, Exclusions{scenario.components, scenario.links});
    // Failed means lost to this scenario: a link that never had a realization
    // in the intact model is a consistency defect, not a casualty, so the
    // baseline dead set is subtracted (explicit removals always count).
    SurvivalIndex baseline(model, {});
    ImpactReport report;
    for (const std::string& id : index.dead_components()) {
        if (baseline.component_alive(id) || scenario.components.count(id)) {
            report.failed_components[model.layer_of(id)].insert(id);
        }
    }
    for (const LinkKey& key : index.dead_links()) {
        if (baseline.link_usable(key) || scenario.links.count(key)) {
            report.failed_links[key.layer].insert(key);
        }
    }
    for (const Requirement& r : model.requirements()) {
        if (requirement_broken(index, r)) {
            report.broken_requirements.insert(r.id);
        } else {
            report.intact_requirements.insert(r.id);
        }
    }
    return report;
}

std::vector<ElementRef> enumerate_spofs(const LayeredModel& model,
                                        const Requirement& requirement) {
    if (requirement.src == requirement.dst) return {};  // a lone vertex has no path to break
    AccessibilityResult access = check_accessibility(model, requirement);
    if (!access.pass) {
        throw Error(Errc::NotAccessible, requirement.id,
                    "requirement \"" + requirement.id + "\" is not accessible: " + access.failure);
    }

    std::vector<ElementRef> candidates;
    for (const Component& c : model.components()) {
        if (layer_number(c.layer) > layer_number(requirement.layer)) continue;
        if (c.id == requirement.src || c.id == requirement.dst) continue;
        candidates.push_back(ElementRef::comp(c.layer, c.id));
    }
    LinkKey direct = LinkKey::make(requirement.layer, requirement.src, requirement.dst);
    for (const Link& l : model.links()) {
        if (layer_number(l.layer) > layer_number(requirement.layer)) continue;
        if (l.key() == direct) continue;
        candidates.push_back(ElementRef::link_ref(l.key()));
    }

    std::vector<ElementRef> spofs;
    for (const ElementRef& candidate : candidates) {
        Exclusions removed;
        if (candidate.is_link) {
            removed.links.insert(candidate.link);
        } else {
            removed.components.insert(candidate.component);
        }
        SurvivalIndex index(model, removed);
        if (requirement_broken(index, requirement)) spofs.push_back(candidate);
    }
    std::sort(spofs.begin(), spofs.end());
    return spofs;
}

std::string Severity::display() const {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f",
                  total == 0 ? 0.0 : static_cast<double>(broken) / static_cast<double>(total));
    return buf;
}

std::vector<FmeaRow> generate_fmea(const LayeredModel& model) {
    if (model.requirements().empty()) {
        throw Error(Errc::NoRequirements, model.name(),
                    "model \"" + model.name() + "\" declares no requirements");
    }
    std::vector<ElementRef> modes;
    for (const Component& c : model.components()) modes.push_back(ElementRef::comp(c.layer, c.id));
    for (const Link& l : model.links()) modes.push_back(ElementRef::link_ref(l.key()));

    std::vector<FmeaRow> rows;
    for (ElementRef& mode : modes) {
        FaultScenario scenario;
        if (mode.is_link) {
            scenario.links.insert(mode.link);
        } else {
            scenario.components.insert(mode.component);
        }
        ImpactReport impact = propagate_failures(model, scenario);
        FmeaRow row;
        row.element = std::move(mode);
        row.effects.assign(impact.broken_requirements.begin(), impact.broken_requirements.end());
        for (const auto& [layer, ids] : impact.failed_components) {
            if (layer_number(layer) > layer_number(row.element.layer)) row.collateral += ids.size();
        }
        for (const auto& [layer, keys] : impact.failed_links) {
            if (layer_number(layer) > layer_number(row.element.layer)) row.collateral += keys.size();
        }
        row.severity = Severity{row.effects.size(), model.requirements().size()};
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const FmeaRow& x, const FmeaRow& y) {
        if (!(x.severity == y.severity)) return x.severity > y.severity;
        return x.element.display() < y.element.display();
    });
    return rows;
}

ScenarioResult run_scenario(const LayeredModel& model, const FaultScenario& scenario) {
    ScenarioResult result;
    result.impact = propagate_failures(model, scenario);
    result.summary = render_impact(model, scenario, result.impact, OutputFormat::Table);
    return result;
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> layer_failures(const ImpactReport& impact, Layer n) {
    std::vector<std::string> out;
    auto c = impact.failed_components.find(n);
    if (c != impact.failed_components.end()) {
        out.insert(out.end(), c->second.begin(), c->second.end());
    }
    auto l = impact.failed_links.find(n);
    if (l != impact.failed_links.end()) {
        for (const LinkKey& key : l->second) out.push_back(key.display());
    }
    return out;
}

}  // namespace

std::string render_impact(const LayeredModel& model, const FaultScenario& scenario,
                          const ImpactReport& impact, OutputFormat format) {
    std::ostringstream out;
    std::vector<std::string> removed(scenario.components.begin(), scenario.components.end());
    for (const LinkKey& key : scenario.links) removed.push_back(key.display());
    std::sort(removed.begin(), removed.end());

    if (format == OutputFormat::Lines) {
        for (const std::string& id : removed) out << "removed\t" << id << "\n";
        for (Layer n : kLayersBottomUp) {
            auto c = impact.failed_components.find(n);
            if (c != impact.failed_components.end()) {
                for (const std::string& id : c->second) {
                    out << "failed\t" << id << "\t" << layer_name(n) << "\n";
                }
            }
            auto l = impact.failed_links.find(n);
            if (l != impact.failed_links.end()) {
                for (const LinkKey& key : l->second) {
                    out << "failed\t" << key.display() << "\t" << layer_name(n) << "\n";
                }
            }
        }
        for (const std::string& id : impact.broken_requirements) out << "broken\t" << id << "\n";
        for (const std::string& id : impact.intact_requirements) out << "intact\t" << id << "\n";
        return out.str();
    }

    out << "removed: " << (removed.empty() ? "-" : join(removed, ", ")) << "\n";
    for (Layer n : kLayersBottomUp) {
        std::vector<std::string> failures = layer_failures(impact, n);
        out << "failed " << layer_name(n) << ": "
            << (failures.empty() ? "-" : join(failures, ", ")) << "\n";
    }
    out << "failed-total: " << impact.failed_count() << "\n";
    std::vector<std::string> broken(impact.broken_requirements.begin(),
                                    impact.broken_requirements.end());
    std::vector<std::string> intact(impact.intact_requirements.begin(),
                                    impact.intact_requirements.end());
    out << "requirements-broken: " << (broken.empty() ? "-" : join(broken, ", ")) << "\n";
    out << "requirements-intact: " << (intact.empty() ? "-" : join(intact, ", ")) << "\n";
    (void)model;
    return out.str();
}

std::string render_fmea(const std::vector<FmeaRow>& rows, OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Lines) {
        for (const FmeaRow& row : rows) {
            out << row.element.display() << "\t" << layer_name(row.element.layer) << "\t"
                << row.severity.display() << "\t"
                << (row.effects.empty() ? "-" : join(row.effects, ",")) << "\n";
        }
        return out.str();
    }
    std::size_t width = 12;
    for (const FmeaRow& row : rows) width = std::max(width, row.element.display().size());
    char header[160];
    std::snprintf(header, sizeof(header), "%-*s %-10s %10s %8s  %s\n", static_cast<int>(width),
                  "element", "layer", "collateral", "severity", "effects");
    out << header;
    for (const FmeaRow& row : rows) {
        char line[512];
        std::snprintf(line, sizeof(line), "%-*s %-10s %10zu %8s  %s\n", static_cast<int>(width),
                      row.element.display().c_str(),
                      std::string(layer_name(row.element.layer)).c_str(), row.collateral,
                      row.severity.display().c_str(),
                      row.effects.empty() ? "-" : join(row.effects, ",").c_str());
        out << line;
    }
    return out.str();
}

std::string render_spofs(const std::string& requirement_id, const std::vector<ElementRef>& spofs,
                         OutputFormat format) {
    std::ostringstream out;
    if (format == OutputFormat::Lines) {
        for (const ElementRef& e : spofs) {
            out << e.display() << "\t" << layer_name(e.layer) << "\n";
        }
        return out.str();
    }
    out << "requirement: " << requirement_id << "\n";
    out << "single-points-of-failure: " << spofs.size() << "\n";
    for (const ElementRef& e : spofs) {
        out << "  " << e.display();
        if (!e.is_link) out << " [" << layer_name(e.layer) << "]";
        out << "\n";
    }
    return out.str();
}

}  // namespace strata
