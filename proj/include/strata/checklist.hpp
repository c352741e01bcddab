#pragma once

#include <map>
#include <string>
#include <vector>

#include "strata/model.hpp"

namespace strata {

enum class CheckKind { Component, Interaction };
enum class CheckStatus { Covered, Unsatisfiable };

/// One control objective. Component checks cover a single component;
/// interaction checks cover one requirement at one layer and carry the
/// witness vertices a tester should exercise.
struct ChecklistItem {
    std::string id;       // CMP-<layer>-<componentId> or INT-<reqId>-L<layer>
    CheckKind kind = CheckKind::Component;
    Layer layer = Layer::Physical;
    std::string subject;  // component id, or requirement id
    CheckStatus status = CheckStatus::Covered;
    std::vector<std::string> witness;  // empty for component checks and unsatisfiable items
};

/// One component check per component, and per requirement one interaction
/// check per layer from the requirement's layer down to the physical layer.
/// Witnesses come from the accessibility evidence when the requirement is
/// accessible, otherwise from a greedy top-down realization that marks the
/// layers it cannot reach as unsatisfiable. Ordered layer descending,
/// components before interactions, then id.
std::vector<ChecklistItem> generate_checklist(const LayeredModel& model);

struct CoverageSummary {
    struct LayerCounts {
        std::size_t components = 0;
        std::size_t interactions = 0;
        std::size_t unsatisfiable = 0;
    };
    std::map<Layer, LayerCounts> per_layer;
    LayerCounts totals;
};

CoverageSummary coverage_summary(const std::vector<ChecklistItem>& checklist);

std::string render_checklist(const std::vector<ChecklistItem>& checklist, OutputFormat format);

}  // namespace strata
