#include "strata/survive.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

namespace strata {

namespace {

// BFS distances from `to`, then a greedy walk from `from` picking the
// smallest usable neighbor that still shrinks the distance. The greedy walk
// yields the lexicographically smallest among all shortest vertex sequences.
std::optional<std::vector<std::string>> lex_bfs_path(
    const LayeredModel& model, const std::string& from, const std::string& to,
    const std::function<bool(const std::string&)>& vertex_ok,
    const std::function<bool(const LinkKey&)>& edge_ok) {
    if (!vertex_ok(from) || !vertex_ok(to)) return std::nullopt;
    if (from == to) return std::vector<std::string>{from};

    std::map<std::string, int> dist;
    dist[to] = 0;
    std::deque<std::string> queue{to};
    while (!queue.empty()) {
        std::string cur = queue.front();
        queue.pop_front();
        for (const auto& [next, key] : model.neighbors(cur)) {
            if (!vertex_ok(next) || !edge_ok(key)) continue;
            if (dist.count(next)) continue;
            dist[next] = dist[cur] + 1;
            queue.push_back(next);
        }
    }
    auto it = dist.find(from);
    if (it == dist.end()) return std::nullopt;

    std::vector<std::string> path{from};
    std::string cur = from;
    int remaining = it->second;
    while (cur != to) {
        const std::string* best = nullptr;
        for (const auto& [next, key] : model.neighbors(cur)) {
            if (!vertex_ok(next) || !edge_ok(key)) continue;
            auto d = dist.find(next);
            if (d == dist.end() || d->second != remaining - 1) continue;
            if (!best || next < *best) best = &next;
        }
        // Reachable per the BFS, so a predecessor always exists.
        cur = *best;
        path.push_back(cur);
        --remaining;
    }
    return path;
}

}  // namespace

SurvivalIndex::SurvivalIndex(const LayeredModel& model, const Exclusions& removed)
    : model_(&model) {
    int next_region = 0;
    for (Layer n : kLayersBottomUp) {
        for (const std::string& id : model.components_on(n)) {
            if (removed.has(id)) {
                dead_components_.insert(id);
                continue;
            }
            if (n == Layer::Physical) continue;
            const auto& images = model.images(id);
            bool all_dead = !images.empty();
            for (const std::string& img : images) {
                if (dead_components_.count(img) == 0) {
                    all_dead = false;
                    break;
                }
            }
            if (all_dead) dead_components_.insert(id);
        }

        for (const Link& l : model.links()) {
            if (l.layer != n) continue;
            LinkKey key = l.key();
            if (removed.has(key) || dead_components_.count(l.a) || dead_components_.count(l.b)) {
                dead_links_.insert(key);
                continue;
            }
            if (n == Layer::Physical) continue;
            bool realizable = false;
            for (const std::string& ia : model.images(l.a)) {
                if (dead_components_.count(ia)) continue;
                for (const std::string& ib : model.images(l.b)) {
                    if (dead_components_.count(ib)) continue;
                    if (connected(layer_below(n), ia, ib)) {
                        realizable = true;
                        break;
                    }
                }
                if (realizable) break;
            }
            if (!realizable) dead_links_.insert(key);
        }

        // Freeze connectivity labels for this layer; the next layer up reads
        // them when testing realizability.
        for (const std::string& id : model.components_on(n)) {
            if (dead_components_.count(id) || region_.count(id)) continue;
            int label = next_region++;
            std::deque<std::string> queue{id};
            region_[id] = label;
            while (!queue.empty()) {
                std::string cur = queue.front();
                queue.pop_front();
                for (const auto& [next, key] : model.neighbors(cur)) {
                    if (dead_links_.count(key) || region_.count(next)) continue;
                    region_[next] = label;
                    queue.push_back(next);
                }
            }
        }
    }
}

bool SurvivalIndex::connected(Layer layer, const std::string& from, const std::string& to) const {
    if (dead_components_.count(from) || dead_components_.count(to)) return false;
    if (from == to) return true;
    auto a = region_.find(from);
    auto b = region_.find(to);
    if (a == region_.end() || b == region_.end()) return false;
    (void)layer;
    return a->second == b->second;
}

std::optional<std::vector<std::string>> SurvivalIndex::path(Layer layer, const std::string& from,
                                                            const std::string& to) const {
    (void)layer;
    return lex_bfs_path(
        *model_, from, to,
        [this](const std::string& id) { return component_alive(id); },
        [this](const LinkKey& key) { return link_usable(key); });
}

std::optional<std::vector<std::string>> lexicographic_shortest_path(const LayeredModel& model,
                                                                    Layer layer,
                                                                    const std::string& from,
                                                                    const std::string& to,
                                                                    const Exclusions& excluded) {
    (void)layer;
    return lex_bfs_path(
        model, from, to,
        [&excluded](const std::string& id) { return !excluded.has(id); },
        [&excluded](const LinkKey& key) { return !excluded.has(key); });
}

}  // namespace strata
