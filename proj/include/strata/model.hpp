#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "strata/errors.hpp"

namespace strata {

// The four architectural layers, numbered bottom (1) to top (4). The stack is
// fixed: every model has exactly these layers, and projections step down by
// exactly one layer.
enum class Layer : int {
    Physical = 1,
    Logical = 2,
    Service = 3,
    Functional = 4,
};

inline constexpr int kLayerCount = 4;
inline constexpr std::array<Layer, kLayerCount> kLayersTopDown = {
    Layer::Functional, Layer::Service, Layer::Logical, Layer::Physical};
inline constexpr std::array<Layer, kLayerCount> kLayersBottomUp = {
    Layer::Physical, Layer::Logical, Layer::Service, Layer::Functional};

constexpr int layer_number(Layer n) { return static_cast<int>(n); }
constexpr Layer layer_below(Layer n) { return static_cast<Layer>(layer_number(n) - 1); }

std::optional<Layer> layer_from_number(int n);
std::string_view layer_name(Layer n);          // "physical" | "logical" | "service" | "functional"
std::string_view layer_report_label(Layer n);  // "Physical" | "Logical" | "System" | "Functional"

/// Parses a layer name; "system" is accepted as an alias for the service layer.
std::optional<Layer> parse_layer_name(std::string_view text);

enum class OutputFormat { Table, Lines };

struct Component {
    std::string id;
    Layer layer = Layer::Physical;
    std::set<std::string> protocols;
    std::set<std::string> standards;
    std::string location;     // optional site tag, empty when undeclared
    std::string description;  // free text, empty when undeclared

    bool operator==(const Component&) const = default;
};

/// Identity of an undirected intra-layer link; endpoints are kept sorted.
struct LinkKey {
    Layer layer = Layer::Physical;
    std::string a;
    std::string b;

    static LinkKey make(Layer layer, std::string x, std::string y);
    auto operator<=>(const LinkKey&) const = default;
    std::string display() const;  // "link:<layer>:<a>-<b>"
};

struct Link {
    Layer layer = Layer::Physical;
    std::string a;  // a < b after build_model
    std::string b;
    std::set<std::string> protocols;

    LinkKey key() const { return LinkKey{layer, a, b}; }
    bool operator==(const Link&) const = default;
};

/// Directed interlayer mapping edge from a component to the lower-layer
/// component that implements or hosts it.
struct Projection {
    std::string upper;
    std::string lower;

    bool operator==(const Projection&) const = default;
};

struct Requirement {
    std::string id;
    std::string src;
    std::string dst;
    Layer layer = Layer::Functional;
    std::optional<int> min_replicas;
    std::optional<int> min_locations;

    bool operator==(const Requirement&) const = default;
};

/// Reference to a failable model element: a component or a link.
struct ElementRef {
    Layer layer = Layer::Physical;
    bool is_link = false;
    std::string component;  // set when !is_link
    LinkKey link;           // set when is_link

    static ElementRef comp(Layer layer, std::string id);
    static ElementRef link_ref(LinkKey key);
    std::string display() const;
    auto operator<=>(const ElementRef&) const = default;  // layer asc, components first
};

/// Immutable four-layer model. Construct with build_model; all queries are
/// pure reads and safe to share across threads.
class LayeredModel {
public:
    LayeredModel() = default;

    const std::string& name() const { return name_; }
    const std::vector<Component>& components() const { return components_; }
    const std::vector<Link>& links() const { return links_; }
    const std::vector<Projection>& projections() const { return projections_; }
    const std::vector<Requirement>& requirements() const { return requirements_; }

    const Component* find_component(const std::string& id) const;
    const Requirement* find_requirement(const std::string& id) const;
    bool has_link(const LinkKey& key) const;
    const Link* find_link(const LinkKey& key) const;

    /// Component ids on a layer, sorted.
    const std::vector<std::string>& components_on(Layer n) const;
    /// Same-layer neighbors of a component, sorted by neighbor id.
    const std::vector<std::pair<std::string, LinkKey>>& neighbors(const std::string& id) const;
    /// Projection images (one layer down), sorted.
    const std::vector<std::string>& images(const std::string& id) const;
    /// Projection preimages (one layer up), sorted.
    const std::vector<std::string>& preimages(const std::string& id) const;
    /// Transitive downward closure of a component's projections, intersected
    /// with the physical layer.
    std::set<std::string> physical_images(const std::string& id) const;

    Layer layer_of(const std::string& id) const;  // throws UnknownElement

    bool operator==(const LayeredModel& other) const;

    friend LayeredModel build_model(std::string name, std::vector<Component> components,
                                    std::vector<Link> links, std::vector<Projection> projections,
                                    std::vector<Requirement> requirements);

private:
    std::string name_ = "unnamed";
    std::vector<Component> components_;    // layer desc, id asc
    std::vector<Link> links_;              // layer desc, a, b
    std::vector<Projection> projections_;  // upper layer desc, upper, lower
    std::vector<Requirement> requirements_;  // id asc

    std::map<std::string, std::size_t> component_index_;
    std::map<std::string, std::size_t> requirement_index_;
    std::set<LinkKey> link_keys_;
    std::map<Layer, std::vector<std::string>> per_layer_;
    std::map<std::string, std::vector<std::pair<std::string, LinkKey>>> adjacency_;
    std::map<std::string, std::vector<std::string>> images_;
    std::map<std::string, std::vector<std::string>> preimages_;
};

/// Builds a model from raw inputs, enforcing referential integrity: unique
/// ids, resolvable endpoints on the declared layer, no self links, no
/// duplicate links or projections. Structural layer rules are checked later
/// by validate_structure, not here.
LayeredModel build_model(std::string name, std::vector<Component> components,
                         std::vector<Link> links, std::vector<Projection> projections,
                         std::vector<Requirement> requirements);

struct ValidationFinding {
    std::string code;
    std::string subject;
    std::string message;

    bool operator==(const ValidationFinding&) const = default;
};

struct ValidationReport {
    std::vector<ValidationFinding> violations;  // ordered by (code, subject)
    std::vector<ValidationFinding> warnings;

    bool ok() const { return violations.empty(); }
};

/// Checks the structural layer rules: every component above the physical
/// layer has at least one projection, projections connect adjacent layers
/// only and never leave the physical layer. Strict mode turns the
/// non-emptiness clauses (per-layer vertex sets, global link set) into
/// violations; lenient mode reports them as warnings. A lower-layer component
/// that is the image of no projection is always a warning.
ValidationReport validate_structure(const LayeredModel& model, bool strict);

std::string render_validation_report(const ValidationReport& report);

// Multiplicity pattern of a component's projections: N:1 (virtualization),
// 1:N (clustering), 1:1 (dedicated), mixed (hybrid).
enum class ArityClass { Virtualized, Clustered, Dedicated, Hybrid };

std::string_view arity_name(ArityClass value);

/// Classifies a component by projection out-degree d and its images'
/// projection in-degrees: d = 1 with a shared image is Virtualized, d > 1
/// with exclusive images is Clustered, d = 1 exclusive is Dedicated,
/// anything else is Hybrid. Throws NoProjection when d = 0.
ArityClass classify_projection_arity(const LayeredModel& model, const std::string& upper);

/// One layer of the model: its vertices and links, the projections leaving
/// it, and the full vertex set of the layer below. Both projection-related
/// sets are empty for the physical layer.
struct LayerView {
    Layer layer = Layer::Physical;
    std::vector<Component> components;
    std::vector<Link> links;
    std::vector<Projection> projections;
    std::vector<Component> lower_components;
};

LayerView layer_subgraph(const LayeredModel& model, Layer n);

struct CardinalityRow {
    Layer layer = Layer::Physical;
    std::size_t components = 0;
    std::size_t links = 0;
    std::optional<std::size_t> projections;        // absent for the physical layer
    std::optional<std::size_t> lower_components;   // absent for the physical layer
};

/// Per-layer set sizes, top layer first.
std::vector<CardinalityRow> cardinality_report(const LayeredModel& model);

std::string render_cardinality_table(const std::vector<CardinalityRow>& rows);

/// True when the text is usable as an id, model name, or location tag in the
/// model text format (non-empty, no whitespace or structural characters).
bool valid_token(std::string_view text);

}  // namespace strata
