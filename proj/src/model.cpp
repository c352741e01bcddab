#include "strata/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace strata {

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::DuplicateId: return "DuplicateId";
        case Errc::DanglingReference: return "DanglingReference";
        case Errc::SelfLink: return "SelfLink";
        case Errc::InvalidValue: return "InvalidValue";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::WrongLayer: return "WrongLayer";
        case Errc::NotALink: return "NotALink";
        case Errc::NoProjection: return "NoProjection";
        case Errc::IdNotQuotable: return "IdNotQuotable";
        case Errc::UnknownElement: return "UnknownElement";
        case Errc::NoRequirements: return "NoRequirements";
        case Errc::NotAccessible: return "NotAccessible";
    }
    return "Error";
}

std::optional<Layer> layer_from_number(int n) {
    if (n < 1 || n > kLayerCount) return std::nullopt;
    return static_cast<Layer>(n);
}

std::string_view layer_name(Layer n) {
    switch (n) {
        case Layer::Physical: return "physical";
        case Layer::Logical: return "logical";
        case Layer::Service: return "service";
        case Layer::Functional: return "functional";
    }
    return "?";
}

std::string_view layer_report_label(Layer n) {
    switch (n) {
        case Layer::Physical: return "Physical";
        case Layer::Logical: return "Logical";
        case Layer::Service: return "System";
        case Layer::Functional: return "Functional";
    }
    return "?";
}

std::optional<Layer> parse_layer_name(std::string_view text) {
    if (text == "physical") return Layer::Physical;
    if (text == "logical") return Layer::Logical;
    if (text == "service" || text == "system") return Layer::Service;
    if (text == "functional") return Layer::Functional;
    return std::nullopt;
}

bool valid_token(std::string_view text) {
    if (text.empty()) return false;
    for (char c : text) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
        if (c == '"' || c == '#' || c == '=') return false;
    }
    return true;
}

LinkKey LinkKey::make(Layer layer, std::string x, std::string y) {
    if (y < x) std::swap(x, y);
    return LinkKey{layer, std::move(x), std::move(y)};
}

std::string LinkKey::display() const {
    std::string out = "link:";
    out += layer_name(layer);
    out += ':';
    out += a;
    out += '-';
    out += b;
    return out;
}

ElementRef ElementRef::comp(Layer layer, std::string id) {
    ElementRef ref;
    ref.layer = layer;
    ref.is_link = false;
    ref.component = std::move(id);
    return ref;
}

ElementRef ElementRef::link_ref(LinkKey key) {
    ElementRef ref;
    ref.layer = key.layer;
    ref.is_link = true;
    ref.link = std::move(key);
    return ref;
}

std::string ElementRef::display() const {
    return is_link ? link.display() : component;
}

const Component* LayeredModel::find_component(const std::string& id) const {
    auto it = component_index_.find(id);
    return it == component_index_.end() ? nullptr : &components_[it->second];
}

const Requirement* LayeredModel::find_requirement(const std::string& id) const {
    auto it = requirement_index_.find(id);
    return it == requirement_index_.end() ? nullptr : &requirements_[it->second];
}

bool LayeredModel::has_link(const LinkKey& key) const { return link_keys_.count(key) > 0; }

const Link* LayeredModel::find_link(const LinkKey& key) const {
    for (const Link& l : links_) {
        if (l.key() == key) return &l;
    }
    return nullptr;
}

namespace {
template <typename Map, typename Key>
const typename Map::mapped_type& lookup_or_empty(const Map& map, const Key& key) {
    static const typename Map::mapped_type empty{};
    auto it = map.find(key);
    return it == map.end() ? empty : it->second;
}
}  // namespace

const std::vector<std::string>& LayeredModel::components_on(Layer n) const {
    return lookup_or_empty(per_layer_, n);
}

const std::vector<std::pair<std::string, LinkKey>>& LayeredModel::neighbors(
    const std::string& id) const {
    return lookup_or_empty(adjacency_, id);
}

const std::vector<std::string>& LayeredModel::images(const std::string& id) const {
    return lookup_or_empty(images_, id);
}

const std::vector<std::string>& LayeredModel::preimages(const std::string& id) const {
    return lookup_or_empty(preimages_, id);
}

std::set<std::string> LayeredModel::physical_images(const std::string& id) const {
    std::set<std::string> result;
    std::deque<std::string> queue{id};
    std::set<std::string> seen{id};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        if (layer_of(cur) == Layer::Physical) {
            result.insert(cur);
            continue;
        }
        for (const std::string& img : images(cur)) {
            if (seen.insert(img).second) queue.push_back(img);
        }
    }
    return result;
}

Layer LayeredModel::layer_of(const std::string& id) const {
    const Component* c = find_component(id);
    if (!c) throw Error(Errc::UnknownElement, id, "unknown component \"" + id + "\"");
    return c->layer;
}

bool LayeredModel::operator==(const LayeredModel& other) const {
    return name_ == other.name_ && components_ == other.components_ && links_ == other.links_ &&
           projections_ == other.projections_ && requirements_ == other.requirements_;
}

namespace {

// Canonical orderings: vertices and edges top layer first, ids ascending.
bool component_less(const Component& x, const Component& y) {
    if (x.layer != y.layer) return layer_number(x.layer) > layer_number(y.layer);
    return x.id < y.id;
}

bool link_less(const Link& x, const Link& y) {
    if (x.layer != y.layer) return layer_number(x.layer) > layer_number(y.layer);
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

void check_tagset(const std::set<std::string>& tags, const std::string& owner,
                  BuildError::Kind kind, std::size_t index, const char* what) {
    for (const std::string& tag : tags) {
        if (!valid_token(tag) || tag.find(',') != std::string::npos) {
            throw BuildError(Errc::InvalidValue, owner,
                             std::string("component \"") + owner + "\" has an unusable " + what +
                                 " tag \"" + tag + "\"",
                             kind, index);
        }
    }
}

}  // namespace

LayeredModel build_model(std::string name, std::vector<Component> components,
                         std::vector<Link> links, std::vector<Projection> projections,
                         std::vector<Requirement> requirements) {
    LayeredModel m;
    if (!valid_token(name)) {
        throw BuildError(Errc::InvalidValue, name, "model name \"" + name + "\" is not a token",
                         BuildError::Kind::Model, 0);
    }
    m.name_ = std::move(name);

    for (std::size_t i = 0; i < components.size(); ++i) {
        const Component& c = components[i];
        if (!valid_token(c.id)) {
            throw BuildError(Errc::InvalidValue, c.id, "component id \"" + c.id + "\" is not a token",
                             BuildError::Kind::Component, i);
        }
        if (!c.location.empty() && !valid_token(c.location)) {
            throw BuildError(Errc::InvalidValue, c.id,
                             "component \"" + c.id + "\" has an unusable location tag",
                             BuildError::Kind::Component, i);
        }
        if (c.description.find('\n') != std::string::npos) {
            throw BuildError(Errc::InvalidValue, c.id,
                             "component \"" + c.id + "\" has a multi-line description",
                             BuildError::Kind::Component, i);
        }
        check_tagset(c.protocols, c.id, BuildError::Kind::Component, i, "protocol");
        check_tagset(c.standards, c.id, BuildError::Kind::Component, i, "standard");
        if (!m.component_index_.emplace(c.id, 0).second) {
            throw BuildError(Errc::DuplicateId, c.id, "duplicate component id \"" + c.id + "\"",
                             BuildError::Kind::Component, i);
        }
    }
    m.components_ = std::move(components);
    std::sort(m.components_.begin(), m.components_.end(), component_less);
    m.component_index_.clear();
    for (std::size_t i = 0; i < m.components_.size(); ++i) {
        m.component_index_.emplace(m.components_[i].id, i);
        m.per_layer_[m.components_[i].layer].push_back(m.components_[i].id);
    }

    auto resolve = [&](const std::string& id, Layer expect, const char* role,
                       BuildError::Kind kind, std::size_t index) {
        const Component* c = m.find_component(id);
        if (!c) {
            throw BuildError(Errc::DanglingReference, id,
                             std::string(role) + " references undeclared component \"" + id + "\"",
                             kind, index);
        }
        if (c->layer != expect) {
            throw BuildError(Errc::DanglingReference, id,
                             std::string(role) + " references \"" + id + "\" which is on layer " +
                                 std::string(layer_name(c->layer)) + ", not " +
                                 std::string(layer_name(expect)),
                             kind, index);
        }
    };

    for (std::size_t i = 0; i < links.size(); ++i) {
        Link& l = links[i];
        if (l.a == l.b) {
            throw BuildError(Errc::SelfLink, l.a, "link connects \"" + l.a + "\" to itself",
                             BuildError::Kind::Link, i);
        }
        resolve(l.a, l.layer, "link", BuildError::Kind::Link, i);
        resolve(l.b, l.layer, "link", BuildError::Kind::Link, i);
        check_tagset(l.protocols, l.a, BuildError::Kind::Link, i, "protocol");
        if (l.b < l.a) std::swap(l.a, l.b);
        if (!m.link_keys_.insert(l.key()).second) {
            throw BuildError(Errc::DuplicateId, l.key().display(),
                             "duplicate " + l.key().display(), BuildError::Kind::Link, i);
        }
    }
    m.links_ = std::move(links);
    std::sort(m.links_.begin(), m.links_.end(), link_less);
    for (const Link& l : m.links_) {
        m.adjacency_[l.a].emplace_back(l.b, l.key());
        m.adjacency_[l.b].emplace_back(l.a, l.key());
    }
    for (auto& [id, adj] : m.adjacency_) std::sort(adj.begin(), adj.end());

    std::set<std::pair<std::string, std::string>> projection_pairs;
    for (std::size_t i = 0; i < projections.size(); ++i) {
        const Projection& p = projections[i];
        auto check = [&](const std::string& id) {
            if (!m.find_component(id)) {
                throw BuildError(Errc::DanglingReference, id,
                                 "map references undeclared component \"" + id + "\"",
                                 BuildError::Kind::Projection, i);
            }
        };
        check(p.upper);
        check(p.lower);
        if (!projection_pairs.emplace(p.upper, p.lower).second) {
            throw BuildError(Errc::DuplicateId, p.upper + "->" + p.lower,
                             "duplicate map " + p.upper + " -> " + p.lower,
                             BuildError::Kind::Projection, i);
        }
    }
    m.projections_ = std::move(projections);
    std::sort(m.projections_.begin(), m.projections_.end(),
              [&](const Projection& x, const Projection& y) {
                  Layer lx = m.layer_of(x.upper);
                  Layer ly = m.layer_of(y.upper);
                  if (lx != ly) return layer_number(lx) > layer_number(ly);
                  if (x.upper != y.upper) return x.upper < y.upper;
                  return x.lower < y.lower;
              });
    for (const Projection& p : m.projections_) {
        m.images_[p.upper].push_back(p.lower);
        m.preimages_[p.lower].push_back(p.upper);
    }
    for (auto& [id, v] : m.images_) std::sort(v.begin(), v.end());
    for (auto& [id, v] : m.preimages_) std::sort(v.begin(), v.end());

    for (std::size_t i = 0; i < requirements.size(); ++i) {
        const Requirement& r = requirements[i];
        if (!valid_token(r.id)) {
            throw BuildError(Errc::InvalidValue, r.id,
                             "requirement id \"" + r.id + "\" is not a token",
                             BuildError::Kind::Requirement, i);
        }
        if (!m.requirement_index_.emplace(r.id, 0).second) {
            throw BuildError(Errc::DuplicateId, r.id, "duplicate requirement id \"" + r.id + "\"",
                             BuildError::Kind::Requirement, i);
        }
        resolve(r.src, r.layer, "requirement", BuildError::Kind::Requirement, i);
        resolve(r.dst, r.layer, "requirement", BuildError::Kind::Requirement, i);
        for (const auto& bound : {r.min_replicas, r.min_locations}) {
            if (bound && *bound < 1) {
                throw BuildError(Errc::InvalidValue, r.id,
                                 "requirement \"" + r.id + "\" has a non-positive minimum",
                                 BuildError::Kind::Requirement, i);
            }
        }
    }
    m.requirements_ = std::move(requirements);
    std::sort(m.requirements_.begin(), m.requirements_.end(),
              [](const Requirement& x, const Requirement& y) { return x.id < y.id; });
    m.requirement_index_.clear();
    for (std::size_t i = 0; i < m.requirements_.size(); ++i) {
        m.requirement_index_.emplace(m.requirements_[i].id, i);
    }
    return m;
}

ValidationReport validate_structure(const LayeredModel& model, bool strict) {
    std::vector<ValidationFinding> violations;
    std::vector<ValidationFinding> warnings;
    auto emit = [&](bool violation, std::string code, std::string subject, std::string message) {
        auto& sink = violation ? violations : warnings;
        sink.push_back({std::move(code), std::move(subject), std::move(message)});
    };

    for (Layer n : kLayersTopDown) {
        if (model.components_on(n).empty()) {
            emit(strict, "EmptyLayer", std::string(layer_name(n)),
                 "layer " + std::string(layer_name(n)) + " has no components");
        }
    }
    if (model.links().empty()) {
        emit(strict, "EmptyLinkSet", "model", "model declares no links");
    }

    for (const Component& c : model.components()) {
        if (c.layer != Layer::Physical && model.images(c.id).empty()) {
            emit(true, "MissingProjection", c.id,
                 "component \"" + c.id + "\" on layer " + std::string(layer_name(c.layer)) +
                     " has no projection");
        }
        if (c.layer != Layer::Functional && model.preimages(c.id).empty()) {
            emit(false, "IsolatedLowerComponent", c.id,
                 "component \"" + c.id + "\" is the image of no projection");
        }
    }

    for (const Projection& p : model.projections()) {
        Layer upper = model.layer_of(p.upper);
        Layer lower = model.layer_of(p.lower);
        std::string subject = p.upper + "->" + p.lower;
        if (upper == Layer::Physical) {
            emit(true, "PhysicalProjection", subject,
                 "projection leaves the physical layer (" + subject + ")");
        } else if (layer_number(upper) != layer_number(lower) + 1) {
            emit(true, "NonAdjacentProjection", subject,
                 "projection " + subject + " connects layer " + std::string(layer_name(upper)) +
                     " to layer " + std::string(layer_name(lower)));
        }
    }

    auto order = [](const ValidationFinding& x, const ValidationFinding& y) {
        if (x.code != y.code) return x.code < y.code;
        return x.subject < y.subject;
    };
    std::sort(violations.begin(), violations.end(), order);
    std::sort(warnings.begin(), warnings.end(), order);
    return ValidationReport{std::move(violations), std::move(warnings)};
}

std::string render_validation_report(const ValidationReport& report) {
    std::ostringstream out;
    for (const ValidationFinding& f : report.violations) {
        out << "violation " << f.code << " " << f.subject << ": " << f.message << "\n";
    }
    for (const ValidationFinding& f : report.warnings) {
        out << "warning " << f.code << " " << f.subject << ": " << f.message << "\n";
    }
    out << report.violations.size() << " violations, " << report.warnings.size() << " warnings\n";
    return out.str();
}

std::string_view arity_name(ArityClass value) {
    switch (value) {
        case ArityClass::Virtualized: return "virtualized";
        case ArityClass::Clustered: return "clustered";
        case ArityClass::Dedicated: return "dedicated";
        case ArityClass::Hybrid: return "hybrid";
    }
    return "?";
}

ArityClass classify_projection_arity(const LayeredModel& model, const std::string& upper) {
    const Component* c = model.find_component(upper);
    if (!c) throw Error(Errc::UnknownElement, upper, "unknown component \"" + upper + "\"");
    const auto& images = model.images(upper);
    if (images.empty()) {
        throw Error(Errc::NoProjection, upper, "component \"" + upper + "\" has no projection");
    }
    bool any_shared = false;
    for (const std::string& img : images) {
        if (model.preimages(img).size() > 1) any_shared = true;
    }
    if (images.size() == 1) return any_shared ? ArityClass::Virtualized : ArityClass::Dedicated;
    return any_shared ? ArityClass::Hybrid : ArityClass::Clustered;
}

LayerView layer_subgraph(const LayeredModel& model, Layer n) {
    LayerView view;
    view.layer = n;
    for (const Component& c : model.components()) {
        if (c.layer == n) view.components.push_back(c);
        if (n != Layer::Physical && c.layer == layer_below(n)) view.lower_components.push_back(c);
    }
    for (const Link& l : model.links()) {
        if (l.layer == n) view.links.push_back(l);
    }
    if (n != Layer::Physical) {
        for (const Projection& p : model.projections()) {
            if (model.layer_of(p.upper) == n) view.projections.push_back(p);
        }
    }
    return view;
}

std::vector<CardinalityRow> cardinality_report(const LayeredModel& model) {
    std::vector<CardinalityRow> rows;
    for (Layer n : kLayersTopDown) {
        LayerView view = layer_subgraph(model, n);
        CardinalityRow row;
        row.layer = n;
        row.components = view.components.size();
        row.links = view.links.size();
        if (n != Layer::Physical) {
            row.projections = view.projections.size();
            row.lower_components = view.lower_components.size();
        }
        rows.push_back(row);
    }
    return rows;
}

std::string render_cardinality_table(const std::vector<CardinalityRow>& rows) {
    std::ostringstream out;
    auto cell = [](const std::optional<std::size_t>& v) {
        return v ? std::to_string(*v) : std::string("-");
    };
    out << "Architectural layer    n   V(n)   E(n)   M(n,n-1)   V(n-1)\n";
    for (const CardinalityRow& row : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-22s %2d %6zu %6zu %10s %8s\n",
                      std::string(layer_report_label(row.layer)).c_str(), layer_number(row.layer),
                      row.components, row.links, cell(row.projections).c_str(),
                      cell(row.lower_components).c_str());
        out << line;
    }
    return out.str();
}

}  // namespace strata
