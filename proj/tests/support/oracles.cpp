#include "support/oracles.hpp"

#include <algorithm>
#include <map>

namespace strata::testing {

namespace {

void dfs_paths(const LayeredModel& model, const Exclusions& excluded, const std::string& dst,
               std::vector<std::string>& current, std::set<std::string>& visited,
               std::vector<std::vector<std::string>>& out) {
    const std::string& cur = current.back();
    if (cur == dst) {
        out.push_back(current);
        return;
    }
    for (const auto& [next, key] : model.neighbors(cur)) {
        if (excluded.has(next) || excluded.has(key) || visited.count(next)) continue;
        visited.insert(next);
        current.push_back(next);
        dfs_paths(model, excluded, dst, current, visited, out);
        current.pop_back();
        visited.erase(next);
    }
}

}  // namespace

std::vector<std::vector<std::string>> all_simple_paths(const LayeredModel& model, Layer layer,
                                                       const std::string& src,
                                                       const std::string& dst,
                                                       const Exclusions& excluded) {
    (void)layer;
    std::vector<std::vector<std::string>> out;
    if (excluded.has(src) || excluded.has(dst)) return out;
    std::vector<std::string> current{src};
    std::set<std::string> visited{src};
    dfs_paths(model, excluded, dst, current, visited, out);
    return out;
}

std::optional<std::vector<std::string>> brute_shortest_lex(const LayeredModel& model, Layer layer,
                                                           const std::string& src,
                                                           const std::string& dst,
                                                           const Exclusions& excluded) {
    auto paths = all_simple_paths(model, layer, src, dst, excluded);
    if (paths.empty()) return std::nullopt;
    const std::vector<std::string>* best = &paths[0];
    for (const auto& path : paths) {
        if (path.size() < best->size() || (path.size() == best->size() && path < *best)) {
            best = &path;
        }
    }
    return *best;
}

bool oracle_link_realizable(const LayeredModel& model, const LinkKey& link,
                            const Exclusions& excluded) {
    if (excluded.has(link) || excluded.has(link.a) || excluded.has(link.b)) return false;
    if (link.layer == Layer::Physical) return true;
    Layer below = layer_below(link.layer);
    for (const std::string& ia : model.images(link.a)) {
        if (excluded.has(ia)) continue;
        for (const std::string& ib : model.images(link.b)) {
            if (excluded.has(ib)) continue;
            for (const auto& path : all_simple_paths(model, below, ia, ib, excluded)) {
                bool all_ok = true;
                for (std::size_t i = 0; i + 1 < path.size() && all_ok; ++i) {
                    all_ok = oracle_link_realizable(
                        model, LinkKey::make(below, path[i], path[i + 1]), excluded);
                }
                if (all_ok) return true;
            }
        }
    }
    return false;
}

bool oracle_accessible(const LayeredModel& model, const Requirement& requirement,
                       const Exclusions& excluded) {
    if (excluded.has(requirement.src) || excluded.has(requirement.dst)) return false;
    for (const auto& path :
         all_simple_paths(model, requirement.layer, requirement.src, requirement.dst, excluded)) {
        bool all_ok = true;
        for (std::size_t i = 0; i + 1 < path.size() && all_ok; ++i) {
            all_ok = oracle_link_realizable(
                model, LinkKey::make(requirement.layer, path[i], path[i + 1]), excluded);
        }
        if (all_ok) return true;
    }
    return false;
}

namespace {

using ElementSet = std::set<ElementRef>;

struct SpofOracle {
    const LayeredModel& model;
    std::map<LinkKey, std::optional<ElementSet>> memo;  // nullopt = unrealizable
    std::map<std::string, ElementSet> dependency_memo;

    // Elements whose lone removal kills a component through its image chain:
    // the intersection over its images v of {v} union their own dependencies.
    // A component with several independently hosted images has no single
    // killer and the set is empty.
    const ElementSet& hosting_dependencies(const std::string& id) {
        auto it = dependency_memo.find(id);
        if (it != dependency_memo.end()) return it->second;
        ElementSet out;
        Layer layer = model.layer_of(id);
        if (layer != Layer::Physical && !model.images(id).empty()) {
            bool first = true;
            for (const std::string& img : model.images(id)) {
                ElementSet chain = hosting_dependencies(img);
                chain.insert(ElementRef::comp(layer_below(layer), img));
                if (first) {
                    out = std::move(chain);
                    first = false;
                } else {
                    ElementSet merged;
                    std::set_intersection(out.begin(), out.end(), chain.begin(), chain.end(),
                                          std::inserter(merged, merged.begin()));
                    out = std::move(merged);
                }
            }
        }
        return dependency_memo.emplace(id, std::move(out)).first->second;
    }

    // Elements common to every realization of one link, or nullopt when the
    // link has no realization at all.
    const std::optional<ElementSet>& common_elements(const LinkKey& link) {
        auto it = memo.find(link);
        if (it != memo.end()) return it->second;
        memo.emplace(link, std::nullopt);  // guards against revisiting; layers strictly decrease

        std::optional<ElementSet> result;
        if (link.layer == Layer::Physical) {
            result = ElementSet{ElementRef::comp(link.layer, link.a),
                                ElementRef::comp(link.layer, link.b),
                                ElementRef::link_ref(link)};
        } else {
            Layer below = layer_below(link.layer);
            std::optional<ElementSet> common;
            for (const std::string& ia : model.images(link.a)) {
                for (const std::string& ib : model.images(link.b)) {
                    for (const auto& path : all_simple_paths(model, below, ia, ib, {})) {
                        std::optional<ElementSet> choice = path_elements(below, path);
                        if (!choice) continue;
                        if (!common) {
                            common = std::move(choice);
                        } else {
                            ElementSet merged;
                            std::set_intersection(common->begin(), common->end(), choice->begin(),
                                                  choice->end(),
                                                  std::inserter(merged, merged.begin()));
                            common = std::move(merged);
                        }
                    }
                }
            }
            if (common) {
                common->insert(ElementRef::comp(link.layer, link.a));
                common->insert(ElementRef::comp(link.layer, link.b));
                common->insert(ElementRef::link_ref(link));
                result = std::move(common);
            }
        }
        auto slot = memo.find(link);
        slot->second = std::move(result);
        return slot->second;
    }

    // Common elements of all realizations that use exactly this path: the
    // path's own vertices and links plus every link's common set; nullopt
    // when some link is unrealizable. A single-vertex path carries no link
    // realizations, so the vertex's hosting dependencies stand in for the
    // image chain a longer path would have recorded.
    std::optional<ElementSet> path_elements(Layer layer, const std::vector<std::string>& path) {
        ElementSet elements;
        for (const std::string& v : path) elements.insert(ElementRef::comp(layer, v));
        if (path.size() == 1) {
            const ElementSet& deps = hosting_dependencies(path.front());
            elements.insert(deps.begin(), deps.end());
            return elements;
        }
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            LinkKey key = LinkKey::make(layer, path[i], path[i + 1]);
            const std::optional<ElementSet>& sub = common_elements(key);
            if (!sub) return std::nullopt;
            elements.insert(sub->begin(), sub->end());
        }
        return elements;
    }
};

}  // namespace

std::set<ElementRef> oracle_spofs(const LayeredModel& model, const Requirement& requirement) {
    SpofOracle oracle{model, {}};
    std::optional<ElementSet> common;
    for (const auto& path : all_simple_paths(model, requirement.layer, requirement.src,
                                             requirement.dst, {})) {
        std::optional<ElementSet> choice = oracle.path_elements(requirement.layer, path);
        if (!choice) continue;
        if (!common) {
            common = std::move(choice);
        } else {
            ElementSet merged;
            std::set_intersection(common->begin(), common->end(), choice->begin(), choice->end(),
                                  std::inserter(merged, merged.begin()));
            common = std::move(merged);
        }
    }
    if (!common) return {};  // not accessible; the caller guards against this
    common->erase(ElementRef::comp(requirement.layer, requirement.src));
    common->erase(ElementRef::comp(requirement.layer, requirement.dst));
    common->erase(ElementRef::link_ref(
        LinkKey::make(requirement.layer, requirement.src, requirement.dst)));
    return *common;
}

}  // namespace strata::testing
