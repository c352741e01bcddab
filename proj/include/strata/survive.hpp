#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "strata/model.hpp"

namespace strata {

/// Elements barred from use during path search, realization, and fault
/// analysis.
struct Exclusions {
    std::set<std::string> components;
    std::set<LinkKey> links;

    bool empty() const { return components.empty() && links.empty(); }
    bool has(const std::string& id) const { return components.count(id) > 0; }
    bool has(const LinkKey& key) const { return links.count(key) > 0; }
};

/// Least fixed point of the upward failure rules for a set of removed
/// elements, computed layer 1 upward:
///   - a removed element is dead;
///   - a link dies when either endpoint is dead;
///   - a component above the physical layer dies when every projection image
///     is dead;
///   - a link above the physical layer dies when no pair of its endpoints'
///     live images is connected over live lower elements (no realization
///     survives).
/// Queries answer reachability over what is left, which is exactly the set of
/// links that still have a full top-down realization.
class SurvivalIndex {
public:
    SurvivalIndex(const LayeredModel& model, const Exclusions& removed);

    bool component_alive(const std::string& id) const { return dead_components_.count(id) == 0; }
    bool link_usable(const LinkKey& key) const { return dead_links_.count(key) == 0; }

    /// Reachability over live links on a layer; connected(u, u) holds iff u
    /// is alive.
    bool connected(Layer layer, const std::string& from, const std::string& to) const;

    /// Shortest live path by hop count, ties broken toward the
    /// lexicographically smallest vertex sequence.
    std::optional<std::vector<std::string>> path(Layer layer, const std::string& from,
                                                 const std::string& to) const;

    const std::set<std::string>& dead_components() const { return dead_components_; }
    const std::set<LinkKey>& dead_links() const { return dead_links_; }

private:
    const LayeredModel* model_;
    std::set<std::string> dead_components_;
    std::set<LinkKey> dead_links_;
    std::map<std::string, int> region_;  // per-vertex connectivity label, live subgraph
};

/// Shortest path by hop count over the plain layer graph, avoiding excluded
/// elements and ignoring whether links are realizable below; ties broken
/// toward the lexicographically smallest vertex sequence. from == to yields
/// the single-vertex path.
std::optional<std::vector<std::string>> lexicographic_shortest_path(const LayeredModel& model,
                                                                    Layer layer,
                                                                    const std::string& from,
                                                                    const std::string& to,
                                                                    const Exclusions& excluded);

}  // namespace strata
