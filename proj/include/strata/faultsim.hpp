#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "strata/model.hpp"
#include "strata/survive.hpp"

namespace strata {

struct FaultScenario {
    std::set<std::string> components;
    std::set<LinkKey> links;
};

struct ImpactReport {
    std::map<Layer, std::set<std::string>> failed_components;
    std::map<Layer, std::set<LinkKey>> failed_links;
    std::set<std::string> broken_requirements;
    std::set<std::string> intact_requirements;

    std::size_t failed_count() const;
};

/// Removes the scenario's elements and propagates failures upward, layer 1
/// first: a link fails with either endpoint; a component fails when all its
/// projection images have failed; a link above the physical layer fails when
/// no realization survives; a requirement breaks when an endpoint fails or no
/// surviving path connects its endpoints on its layer. Throws UnknownElement
/// for scenario entries not in the model.
ImpactReport propagate_failures(const LayeredModel& model, const FaultScenario& scenario);

/// Every single element whose lone removal breaks the requirement, over all
/// layers at or below the requirement's layer, excluding the requirement's
/// endpoints and the direct link between them. Sorted layer ascending,
/// components before links. Requires the requirement to be accessible.
std::vector<ElementRef> enumerate_spofs(const LayeredModel& model,
                                        const Requirement& requirement);

/// Exact fraction: broken requirements over all requirements.
struct Severity {
    std::size_t broken = 0;
    std::size_t total = 1;

    bool operator==(const Severity& other) const { return broken * other.total == other.broken * total; }
    bool operator>(const Severity& other) const { return broken * other.total > other.broken * total; }
    std::string display() const;  // fixed three decimals
};

struct FmeaRow {
    ElementRef element;
    std::vector<std::string> effects;  // broken requirement ids, sorted
    std::size_t collateral = 0;        // failed elements on layers above the removed one
    Severity severity;
};

/// One row per component and link of the model, each treated as a single
/// failure mode; sorted by severity descending, then element id. Throws
/// NoRequirements when the model has none.
std::vector<FmeaRow> generate_fmea(const LayeredModel& model);

struct ScenarioResult {
    ImpactReport impact;
    std::string summary;
};

/// propagate_failures plus a human-readable per-layer summary.
ScenarioResult run_scenario(const LayeredModel& model, const FaultScenario& scenario);

std::string render_impact(const LayeredModel& model, const FaultScenario& scenario,
                          const ImpactReport& impact, OutputFormat format);
std::string render_fmea(const std::vector<FmeaRow>& rows, OutputFormat format);
std::string render_spofs(const std::string& requirement_id, const std::vector<ElementRef>& spofs,
                         OutputFormat format);

}  // namespace strata
