#pragma once

#include <optional>
#include <string>
#include <vector>

#include "strata/model.hpp"
#include "strata/survive.hpp"

namespace strata {

/// Simple path on a single layer; a lone vertex when src == dst.
struct WitnessPath {
    Layer layer = Layer::Physical;
    std::vector<std::string> vertices;

    bool operator==(const WitnessPath&) const = default;
};

/// Evidence that a path is implementable: each link of the root path carries
/// a child tree rooted at the lower-layer path between images of its
/// endpoints, down to the physical layer. Single-vertex roots have no
/// children.
struct RealizationTree {
    WitnessPath root;
    std::vector<RealizationTree> children;
};

std::string render_realization_tree(const RealizationTree& tree, int indent = 0);

/// Shortest path by hop count between two components of one layer, avoiding
/// excluded elements, ties broken toward the lexicographically smallest
/// vertex sequence. Ignores whether links are realizable below. Throws
/// WrongLayer when an endpoint is not on the layer.
std::optional<WitnessPath> deterministic_path(const LayeredModel& model, Layer layer,
                                              const std::string& src, const std::string& dst,
                                              const Exclusions& excluded = {});

/// Full top-down realization of one link, or nullopt when none exists with
/// the exclusions in force. The witness picks the lexicographically smallest
/// viable image pair at every level. Throws NotALink when (a, b) is not a
/// link of the layer.
std::optional<RealizationTree> realize_link(const LayeredModel& model, Layer layer,
                                            const std::string& a, const std::string& b,
                                            const Exclusions& excluded = {});

struct AccessibilityResult {
    bool pass = false;
    std::optional<RealizationTree> evidence;  // present on pass
    std::string failure;                      // first failing link or missing path on fail
};

/// A requirement is accessible when some path between its endpoints on its
/// layer realizes fully down to the physical layer.
AccessibilityResult check_accessibility(const LayeredModel& model, const Requirement& requirement);

enum class CompatibilityKind { Incompatible, UnspecifiedProtocols };

struct CompatibilityFinding {
    CompatibilityKind kind = CompatibilityKind::Incompatible;
    LinkKey link;

    bool operator==(const CompatibilityFinding&) const = default;
};

/// Endpoint protocol sets of every link must intersect; an endpoint with no
/// declared protocols downgrades the link to a warning finding.
std::vector<CompatibilityFinding> check_compatibility(const LayeredModel& model);

struct CountCheck {
    int required = 0;
    int actual = 0;
    bool pass = false;
};

struct TransparencyResult {
    std::optional<CountCheck> replicas;   // absent when the requirement sets no minimum
    std::optional<CountCheck> locations;

    bool pass() const {
        return (!replicas || replicas->pass) && (!locations || locations->pass);
    }
};

/// Counts the destination's physical images against min_replicas, and their
/// distinct location tags against min_locations (untagged images each count
/// as their own location). Absent minima pass vacuously.
TransparencyResult check_cardinality_transparency(const LayeredModel& model,
                                                  const Requirement& requirement);

/// Ids of components with no declared standards, sorted.
std::vector<std::string> check_openness(const LayeredModel& model);

enum class Verdict { Consistent, ConsistentWithWarnings, Inconsistent };

std::string_view verdict_name(Verdict verdict);

struct RequirementFinding {
    std::string id;
    AccessibilityResult accessibility;
    TransparencyResult transparency;
    bool spofs_checked = false;      // false when the requirement is not accessible
    std::vector<ElementRef> spofs;   // failure transparency fails when non-empty
};

struct ConsistencyReport {
    std::string model_name;
    ValidationReport structure;           // strict
    bool structure_ok = false;
    std::vector<CompatibilityFinding> compatibility;
    std::vector<RequirementFinding> requirements;
    std::vector<std::string> openness;
    Verdict verdict = Verdict::Inconsistent;
};

/// Runs the full audit: strict structural validation first (semantic checks
/// are skipped when it fails), then compatibility, per-requirement
/// accessibility, cardinality transparency, failure transparency (no single
/// point of failure), and openness.
ConsistencyReport consistency_check(const LayeredModel& model);

std::string render_consistency_report(const ConsistencyReport& report, OutputFormat format);

}  // namespace strata
